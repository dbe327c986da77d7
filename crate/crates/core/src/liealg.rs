//! Root data, sl2 representations and their tensor products, invariants,
//! coinvariants and conformal-block dimensions.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactfield::{rat, Rational};
use crate::linalg::{Matrix, Subspace};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LieError {
    #[error("weight has {got} coordinates, rank is {rank}")]
    BasisMismatch { got: usize, rank: usize },
    #[error("only sl2 is supported here, got {0}")]
    UnsupportedAlgebra(String),
    #[error("invalid Cartan type {0}")]
    InvalidType(String),
    #[error("weight {index} pairs to {pairing} with the highest root, above level {level}")]
    LevelViolation { index: usize, pairing: String, level: u64 },
    #[error("marked points {0} and {1} coincide")]
    DuplicatePoints(usize, usize),
    #[error("weight {0} is not dominant integral")]
    NotDominantIntegral(usize),
    #[error("{points} points for {weights} weights")]
    PointCount { points: usize, weights: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CartanType {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// Coordinates of a weight and the basis they refer to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum WeightBasis {
    #[default]
    Fundamental,
    Root,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Weight {
    pub basis: WeightBasis,
    pub coords: Vec<Rational>,
}

impl Weight {
    pub fn fundamental(coords: Vec<Rational>) -> Self {
        Weight { basis: WeightBasis::Fundamental, coords }
    }

    pub fn root(coords: Vec<Rational>) -> Self {
        Weight { basis: WeightBasis::Root, coords }
    }

    /// `Σ labels_i ω_i`.
    pub fn from_labels(labels: &[i64]) -> Self {
        Weight::fundamental(labels.iter().map(|&x| rat(x, 1)).collect())
    }

    pub fn omega(rank: usize, i: usize) -> Self {
        let mut l = vec![0; rank];
        l[i] = 1;
        Weight::from_labels(&l)
    }
}

/// Root system with the invariant form normalized so that long roots have `(α, α) = 2`.
#[derive(Clone, Debug)]
pub struct RootData {
    pub cartan_type: CartanType,
    pub rank: usize,
    /// `(α_i, α_j)`.
    pub gram: Matrix<Rational>,
    /// `A_ij = 2(α_i, α_j)/(α_j, α_j)`; row `i` is `α_i` in fundamental coordinates.
    pub cartan: Matrix<Rational>,
    /// Positive roots in simple-root coordinates, sorted by height then lexicographically.
    pub positive_roots: Vec<Vec<i64>>,
    pub highest_root: Vec<i64>,
    pub dual_coxeter: u64,
    cartan_inv: Matrix<Rational>,
    w0_word: Vec<usize>,
}

fn simply_laced(rank: usize, edges: &[(usize, usize)]) -> Vec<Vec<Rational>> {
    let mut g = vec![vec![rat(0, 1); rank]; rank];
    for (i, row) in g.iter_mut().enumerate() {
        row[i] = rat(2, 1);
    }
    for &(a, b) in edges {
        g[a][b] = rat(-1, 1);
        g[b][a] = rat(-1, 1);
    }
    g
}

fn chain(rank: usize) -> Vec<(usize, usize)> {
    (1..rank).map(|i| (i - 1, i)).collect()
}

impl RootData {
    pub fn new(cartan_type: CartanType, rank: usize) -> Result<Self, LieError> {
        use CartanType::*;
        let bad = || LieError::InvalidType(format!("{cartan_type}{rank}"));
        let gram = match cartan_type {
            A if rank >= 1 => simply_laced(rank, &chain(rank)),
            B if rank >= 2 => {
                let mut g = simply_laced(rank, &chain(rank));
                g[rank - 1][rank - 1] = rat(1, 1);
                g
            }
            C if rank >= 2 => {
                let mut g = simply_laced(rank, &chain(rank));
                for (i, row) in g.iter_mut().enumerate() {
                    for x in row.iter_mut() {
                        *x = &*x / rat(2, 1);
                    }
                    if i == rank - 1 {
                        row[rank - 1] = rat(2, 1);
                    }
                }
                g[rank - 2][rank - 1] = rat(-1, 1);
                g[rank - 1][rank - 2] = rat(-1, 1);
                g
            }
            D if rank >= 4 => {
                let mut e = chain(rank - 1);
                e.push((rank - 3, rank - 1));
                simply_laced(rank, &e)
            }
            E if (6..=8).contains(&rank) => {
                // Bourbaki: 1-3-4-5-6-…, with 2 attached to 4
                let mut e = vec![(0, 2), (2, 3), (1, 3)];
                e.extend((4..rank).map(|i| (i - 1, i)));
                simply_laced(rank, &e)
            }
            F if rank == 4 => {
                let mut g = simply_laced(4, &[(0, 1), (2, 3)]);
                g[2][2] = rat(1, 1);
                g[3][3] = rat(1, 1);
                g[2][3] = rat(-1, 2);
                g[3][2] = rat(-1, 2);
                g[1][2] = rat(-1, 1);
                g[2][1] = rat(-1, 1);
                g
            }
            G if rank == 2 => vec![vec![rat(2, 3), rat(-1, 1)], vec![rat(-1, 1), rat(2, 1)]],
            _ => return Err(bad()),
        };
        let gram = Matrix::from_rows(gram);
        let cartan = Matrix::from_fn(rank, rank, |i, j| rat(2, 1) * &gram[(i, j)] / &gram[(j, j)]);
        let cartan_inv = cartan.inverse().expect("Cartan matrix is invertible");
        let positive_roots = positive_roots(&cartan);
        let highest_root = positive_roots.last().cloned().expect("at least one root");
        let dual_coxeter = 1 + highest_root
            .iter()
            .enumerate()
            .map(|(i, &c)| (rat(c, 1) * &gram[(i, i)] / rat(2, 1)).to_integer().to_u64().unwrap())
            .sum::<u64>();
        let mut rd = RootData {
            cartan_type,
            rank,
            gram,
            cartan,
            positive_roots,
            highest_root,
            dual_coxeter,
            cartan_inv,
            w0_word: vec![],
        };
        rd.w0_word = rd.antidominant_word(&vec![rat(1, 1); rank]);
        Ok(rd)
    }

    pub fn sl2() -> Self {
        RootData::new(CartanType::A, 1).expect("A1 is valid")
    }

    pub fn is_sl2(&self) -> bool {
        self.cartan_type == CartanType::A && self.rank == 1
    }

    pub fn highest_root_weight(&self) -> Weight {
        Weight::root(self.highest_root.iter().map(|&c| rat(c, 1)).collect())
    }

    pub fn simple_root(&self, i: usize) -> Weight {
        let mut c = vec![rat(0, 1); self.rank];
        c[i] = rat(1, 1);
        Weight::root(c)
    }

    fn check(&self, w: &Weight) -> Result<(), LieError> {
        if w.coords.len() != self.rank {
            return Err(LieError::BasisMismatch { got: w.coords.len(), rank: self.rank });
        }
        Ok(())
    }

    /// Simple-root coordinates; `ω = A^{-1} α`.
    pub fn to_root_coords(&self, w: &Weight) -> Result<Vec<Rational>, LieError> {
        self.check(w)?;
        Ok(match w.basis {
            WeightBasis::Root => w.coords.clone(),
            WeightBasis::Fundamental => self.cartan_inv.vec_mul(&w.coords),
        })
    }

    /// Dynkin labels `2(λ, α_i)/(α_i, α_i)`.
    pub fn to_fundamental(&self, w: &Weight) -> Result<Vec<Rational>, LieError> {
        self.check(w)?;
        Ok(match w.basis {
            WeightBasis::Fundamental => w.coords.clone(),
            WeightBasis::Root => self.cartan.vec_mul(&w.coords),
        })
    }
}

fn positive_roots(cartan: &Matrix<Rational>) -> Vec<Vec<i64>> {
    let n = cartan.nrows();
    let a = |i: usize, j: usize| cartan[(i, j)].to_integer().to_i64().unwrap();
    let mut seen: BTreeSet<Vec<i64>> = BTreeSet::new();
    let mut frontier: Vec<Vec<i64>> = (0..n)
        .map(|i| {
            let mut v = vec![0; n];
            v[i] = 1;
            v
        })
        .collect();
    while let Some(beta) = frontier.pop() {
        if !seen.insert(beta.clone()) {
            continue;
        }
        for i in 0..n {
            // s_i β = β - <β, α_i^∨> α_i, with <β, α_i^∨> = Σ_j β_j A_ji
            let pairing: i64 = (0..n).map(|j| beta[j] * a(j, i)).sum();
            let mut img = beta.clone();
            img[i] -= pairing;
            if img.iter().all(|&c| c >= 0) && img.iter().any(|&c| c > 0) && !seen.contains(&img) {
                frontier.push(img);
            }
        }
    }
    let mut roots: Vec<Vec<i64>> = seen.into_iter().collect();
    roots.sort_by_key(|r| (r.iter().sum::<i64>(), r.clone()));
    roots
}

impl RootData {
    /// Reflection word taking the weight with Dynkin labels `labels` to the antidominant chamber.
    fn antidominant_word(&self, labels: &[Rational]) -> Vec<usize> {
        let mut cur = labels.to_vec();
        let mut word = Vec::new();
        while let Some(i) = cur.iter().position(|x| x.is_positive()) {
            self.reflect_labels(&mut cur, i);
            word.push(i);
        }
        word
    }

    fn reflect_labels(&self, labels: &mut [Rational], i: usize) {
        let m = labels[i].clone();
        for (j, l) in labels.iter_mut().enumerate() {
            *l -= &m * &self.cartan[(i, j)];
        }
    }

    /// `w_0 λ`.
    pub fn longest_element_action(&self, w: &Weight) -> Result<Weight, LieError> {
        let mut l = self.to_fundamental(w)?;
        for &i in &self.w0_word {
            self.reflect_labels(&mut l, i);
        }
        Ok(Weight::fundamental(l))
    }

    pub fn dual_weight(&self, w: &Weight) -> Result<Weight, LieError> {
        let w0 = self.longest_element_action(w)?;
        Ok(Weight::fundamental(w0.coords.into_iter().map(|x| -x).collect()))
    }
}

/// Normalized invariant pairing `(λ, μ)`.
pub fn weight_pairing(rd: &RootData, l: &Weight, m: &Weight) -> Result<Rational, LieError> {
    let a = rd.to_root_coords(l)?;
    let b = rd.to_root_coords(m)?;
    Ok(rd.gram.mul_vec(&b).iter().zip(&a).fold(Rational::zero(), |acc, (x, y)| acc + x * y))
}

/// `λ* = -w_0 λ` componentwise.
pub fn dual_weights(rd: &RootData, ls: &[Weight]) -> Result<Vec<Weight>, LieError> {
    ls.iter().map(|w| rd.dual_weight(w)).collect()
}

/// Irreducible sl2 module of highest weight `m` with basis `w_0, …, w_m`:
/// `f w_k = w_{k+1}`, `e w_k = k(m-k+1) w_{k-1}`, `h w_k = (m-2k) w_k`.
#[derive(Clone, Debug)]
pub struct Sl2Rep {
    pub m: usize,
    pub e: Matrix<Rational>,
    pub f: Matrix<Rational>,
    pub h: Matrix<Rational>,
}

impl Sl2Rep {
    pub fn new(m: usize) -> Self {
        let n = m + 1;
        let mut e = Matrix::zeros(n, n);
        let mut f = Matrix::zeros(n, n);
        let mut h = Matrix::zeros(n, n);
        for k in 0..n {
            h[(k, k)] = rat(m as i64 - 2 * k as i64, 1);
            if k + 1 < n {
                f[(k + 1, k)] = rat(1, 1);
            }
            if k > 0 {
                e[(k - 1, k)] = rat((k * (m - k + 1)) as i64, 1);
            }
        }
        Sl2Rep { m, e, f, h }
    }

    pub fn dim(&self) -> usize {
        self.m + 1
    }
}

/// Which sl2 generator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Gen {
    E,
    F,
    H,
}

/// `V_{m_1} ⊗ … ⊗ V_{m_n}` with basis multi-indices in lexicographic order
/// (first factor most significant).
#[derive(Clone, Debug)]
pub struct TensorSpace {
    pub factors: Vec<Sl2Rep>,
    pub basis: Vec<Vec<usize>>,
}

impl TensorSpace {
    pub fn new(ms: &[usize]) -> Self {
        let factors: Vec<Sl2Rep> = ms.iter().map(|&m| Sl2Rep::new(m)).collect();
        let mut basis = vec![vec![]];
        for f in &factors {
            basis = basis
                .into_iter()
                .flat_map(|b: Vec<usize>| {
                    (0..f.dim()).map(move |k| {
                        let mut c = b.clone();
                        c.push(k);
                        c
                    })
                })
                .collect();
        }
        TensorSpace { factors, basis }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn index_of(&self, multi: &[usize]) -> usize {
        multi.iter().zip(&self.factors).fold(0, |acc, (&k, f)| acc * f.dim() + k)
    }

    /// `h`-eigenvalue of a basis vector.
    pub fn weight_of(&self, idx: usize) -> i64 {
        self.basis[idx].iter().zip(&self.factors).map(|(&k, f)| f.m as i64 - 2 * k as i64).sum()
    }

    pub fn zero_weight_indices(&self) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.weight_of(i) == 0).collect()
    }

    fn factor_matrix(&self, i: usize, g: Gen) -> &Matrix<Rational> {
        let f = &self.factors[i];
        match g {
            Gen::E => &f.e,
            Gen::F => &f.f,
            Gen::H => &f.h,
        }
    }

    /// `Π_s X_s^{(i_s)}` applied to the basis vector `idx`, as a sparse combination.
    pub fn apply_ops(&self, ops: &[(usize, Gen)], idx: usize) -> BTreeMap<usize, Rational> {
        let mut cur: BTreeMap<Vec<usize>, Rational> = BTreeMap::new();
        cur.insert(self.basis[idx].clone(), Rational::one());
        for &(i, g) in ops.iter().rev() {
            let m = self.factor_matrix(i, g);
            let mut next: BTreeMap<Vec<usize>, Rational> = BTreeMap::new();
            for (multi, c) in cur {
                let k = multi[i];
                for row in 0..m.nrows() {
                    let x = &m[(row, k)];
                    if !x.is_zero() {
                        let mut t = multi.clone();
                        t[i] = row;
                        *next.entry(t).or_insert_with(Rational::zero) += &c * x;
                    }
                }
            }
            cur = next;
        }
        cur.into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(m, c)| (self.index_of(&m), c))
            .collect()
    }

    /// Matrix of `Π_s X_s^{(i_s)}` (columns are images of basis vectors).
    pub fn ops_matrix(&self, ops: &[(usize, Gen)]) -> Matrix<Rational> {
        let n = self.dim();
        let mut out = Matrix::zeros(n, n);
        for col in 0..n {
            for (row, c) in self.apply_ops(ops, col) {
                out[(row, col)] = c;
            }
        }
        out
    }

    /// Diagonal action `Σ_i X^{(i)}`.
    pub fn action(&self, g: Gen) -> Matrix<Rational> {
        (0..self.factors.len())
            .map(|i| self.ops_matrix(&[(i, g)]))
            .fold(Matrix::zeros(self.dim(), self.dim()), |acc, m| acc.add(&m))
    }

    /// `Ω^{(jk)} = ½ h^{(j)} h^{(k)} + e^{(j)} f^{(k)} + f^{(j)} e^{(k)}`.
    pub fn casimir(&self, j: usize, k: usize) -> Matrix<Rational> {
        let hh = self.ops_matrix(&[(j, Gen::H), (k, Gen::H)]).scale(&rat(1, 2));
        let ef = self.ops_matrix(&[(j, Gen::E), (k, Gen::F)]);
        let fe = self.ops_matrix(&[(j, Gen::F), (k, Gen::E)]);
        hh.add(&ef).add(&fe)
    }

    /// Column span of `e`, `f`, `h`: the subspace `g V`.
    pub fn g_image(&self) -> Subspace<Rational> {
        let cols: Vec<Vec<Rational>> = [Gen::E, Gen::F, Gen::H]
            .iter()
            .flat_map(|&g| self.action(g).transpose().rows_vec())
            .collect();
        Subspace::span(self.dim(), &cols)
    }

    /// Functionals `ψ` with `ψ ∘ X = 0` for `X = e, f, h`.
    pub fn invariant_functionals(&self) -> Vec<Vec<Rational>> {
        let stacked = self.action(Gen::E).hstack(&self.action(Gen::F)).hstack(&self.action(Gen::H));
        stacked.left_nullspace()
    }
}

/// Highest weights of sl2 weights given in fundamental coordinates.
pub fn sl2_highest_weights(rd: &RootData, ls: &[Weight]) -> Result<Vec<usize>, LieError> {
    if !rd.is_sl2() {
        return Err(LieError::UnsupportedAlgebra(format!("{}{}", rd.cartan_type, rd.rank)));
    }
    ls.iter()
        .enumerate()
        .map(|(i, w)| {
            let l = rd.to_fundamental(w)?;
            let x = &l[0];
            if !x.is_integer() || x.is_negative() {
                return Err(LieError::NotDominantIntegral(i));
            }
            Ok(x.to_integer().to_usize().unwrap())
        })
        .collect()
}

/// Multiplicity of the trivial module in `V_{m_1} ⊗ … ⊗ V_{m_n}` by Clebsch–Gordan.
pub fn invariants_dim(rd: &RootData, ls: &[Weight]) -> Result<usize, LieError> {
    let ms = sl2_highest_weights(rd, ls)?;
    let mut mult: BTreeMap<usize, usize> = BTreeMap::from([(0, 1)]);
    for m in ms {
        let mut next = BTreeMap::new();
        for (&j, &c) in &mult {
            let lo = j.abs_diff(m);
            for k in (lo..=j + m).step_by(2) {
                *next.entry(k).or_insert(0) += c;
            }
        }
        mult = next;
    }
    Ok(mult.get(&0).copied().unwrap_or(0))
}

/// `V / g V` with a basis of standard vectors and the projection onto it.
#[derive(Clone, Debug)]
pub struct Coinvariants {
    pub space: TensorSpace,
    /// Basis indices whose classes form the chosen basis.
    pub basis: Vec<usize>,
    /// `dim × dim V`; column `k` holds the coordinates of the class of basis vector `k`.
    pub projection: Matrix<Rational>,
    relations: Subspace<Rational>,
}

impl Coinvariants {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Coordinates of the class of `v`.
    pub fn project(&self, v: &[Rational]) -> Vec<Rational> {
        self.projection.mul_vec(v)
    }

    /// Induced action of an endomorphism commuting with `g` (columns are images).
    pub fn induced(&self, op: &Matrix<Rational>) -> Matrix<Rational> {
        let cols: Vec<Vec<Rational>> = self.basis.iter().map(|&b| self.project(&op.column(b))).collect();
        Matrix::from_rows_with_cols(self.dim(), cols).transpose()
    }

    pub fn relations(&self) -> &Subspace<Rational> {
        &self.relations
    }
}

fn quotient_by(space: TensorSpace, relations: Subspace<Rational>) -> Coinvariants {
    let n = space.dim();
    let mut basis = Vec::new();
    let mut acc = relations.clone();
    for k in 0..n {
        let e = unit(n, k);
        if !acc.contains(&e) {
            acc = acc.join(&[e]);
            basis.push(k);
        }
    }
    // columns: chosen unit vectors, then a relation basis; solve for every unit vector
    let mut cols: Vec<Vec<Rational>> = basis.iter().map(|&b| unit(n, b)).collect();
    cols.extend(relations.basis().rows_vec());
    let a = Matrix::from_rows_with_cols(n, cols).transpose();
    let d = basis.len();
    let mut proj = Matrix::zeros(d, n);
    for k in 0..n {
        let x = a.solve(&unit(n, k)).expect("unit vectors span V");
        for (i, xi) in x.into_iter().take(d).enumerate() {
            proj[(i, k)] = xi;
        }
    }
    Coinvariants { space, basis, projection: proj, relations }
}

fn unit(n: usize, k: usize) -> Vec<Rational> {
    let mut e = vec![Rational::zero(); n];
    e[k] = Rational::one();
    e
}

/// `V(λ⃗) / g V(λ⃗)`.
pub fn coinvariants_quotient(rd: &RootData, ls: &[Weight]) -> Result<Coinvariants, LieError> {
    let space = TensorSpace::new(&sl2_highest_weights(rd, ls)?);
    let rel = space.g_image();
    Ok(quotient_by(space, rel))
}

/// `V(λ⃗) / (g V(λ⃗) + Im T^{ℓ+1})` with `T = Σ z_i e^{(i)}`.
pub fn conformal_block_quotient(
    rd: &RootData,
    ls: &[Weight],
    level: u64,
    z: &[Rational],
) -> Result<Coinvariants, LieError> {
    let ms = sl2_highest_weights(rd, ls)?;
    if z.len() != ls.len() {
        return Err(LieError::PointCount { points: z.len(), weights: ls.len() });
    }
    let theta = rd.highest_root_weight();
    for (i, w) in ls.iter().enumerate() {
        let p = weight_pairing(rd, w, &theta)?;
        if p > rat(level as i64, 1) {
            return Err(LieError::LevelViolation { index: i, pairing: p.to_string(), level });
        }
    }
    for i in 0..z.len() {
        for j in 0..i {
            if z[i] == z[j] {
                return Err(LieError::DuplicatePoints(j, i));
            }
        }
    }
    let space = TensorSpace::new(&ms);
    let n = space.dim();
    let t = (0..ms.len())
        .map(|i| space.ops_matrix(&[(i, Gen::E)]).scale(&z[i]))
        .fold(Matrix::zeros(n, n), |acc, m| acc.add(&m));
    let mut tp = Matrix::identity(n);
    for _ in 0..=level {
        tp = t.mul(&tp);
    }
    let rel = space.g_image().join(&tp.transpose().rows_vec());
    Ok(quotient_by(space, rel))
}

pub fn conformal_block_dim(rd: &RootData, ls: &[Weight], level: u64, z: &[Rational]) -> Result<usize, LieError> {
    Ok(conformal_block_quotient(rd, ls, level, z)?.dim())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn omega1(n: usize) -> Vec<Weight> {
        vec![Weight::omega(1, 0); n]
    }

    fn z4() -> Vec<Rational> {
        vec![rat(-1, 2), rat(0, 1), rat(1, 2), rat(1, 1)]
    }

    #[test]
    fn sl2_pairings() {
        let rd = RootData::sl2();
        let w = Weight::omega(1, 0);
        let a = rd.simple_root(0);
        assert_eq!(weight_pairing(&rd, &w, &a).unwrap(), rat(1, 1));
        assert_eq!(weight_pairing(&rd, &a, &a).unwrap(), rat(2, 1));
        assert_eq!(weight_pairing(&rd, &w, &w).unwrap(), rat(1, 2));
        let bad = Weight::from_labels(&[1, 0]);
        assert_eq!(weight_pairing(&rd, &bad, &w), Err(LieError::BasisMismatch { got: 2, rank: 1 }));
    }

    #[test]
    fn root_systems() {
        use CartanType::*;
        let cases = [
            (A, 1, 1, 2),
            (A, 3, 6, 4),
            (B, 3, 9, 5),
            (C, 3, 9, 4),
            (D, 4, 12, 6),
            (E, 6, 36, 12),
            (E, 7, 63, 18),
            (E, 8, 120, 30),
            (F, 4, 24, 9),
            (G, 2, 6, 4),
        ];
        for (t, n, roots, gstar) in cases {
            let rd = RootData::new(t, n).unwrap();
            assert_eq!(rd.positive_roots.len(), roots, "{t}{n}");
            assert_eq!(rd.dual_coxeter, gstar, "{t}{n}");
            let theta = rd.highest_root_weight();
            assert_eq!(weight_pairing(&rd, &theta, &theta).unwrap(), rat(2, 1), "{t}{n}");
            for i in 0..n {
                for j in 0..n {
                    let lhs = &rd.cartan[(i, j)];
                    let rhs = rat(2, 1) * &rd.gram[(i, j)] / &rd.gram[(j, j)];
                    assert_eq!(*lhs, rhs);
                }
            }
        }
        assert!(RootData::new(D, 3).is_err());
    }

    #[test]
    fn dual_weights_examples() {
        let rd = RootData::sl2();
        assert_eq!(rd.dual_weight(&Weight::from_labels(&[1])).unwrap(), Weight::from_labels(&[1]));
        assert_eq!(rd.dual_weight(&Weight::from_labels(&[3])).unwrap(), Weight::from_labels(&[3]));
        let a3 = RootData::new(CartanType::A, 3).unwrap();
        assert_eq!(a3.dual_weight(&Weight::from_labels(&[1, 2, 0])).unwrap(), Weight::from_labels(&[0, 2, 1]));
        let e6 = RootData::new(CartanType::E, 6).unwrap();
        let l = Weight::from_labels(&[1, 0, 0, 0, 0, 0]);
        assert_eq!(e6.dual_weight(&l).unwrap(), Weight::from_labels(&[0, 0, 0, 0, 0, 1]));
        for t in [(CartanType::B, 3), (CartanType::D, 5), (CartanType::G, 2)] {
            let rd = RootData::new(t.0, t.1).unwrap();
            let l = Weight::fundamental((0..t.1).map(|i| rat(i as i64 + 1, 1)).collect());
            assert_eq!(rd.dual_weight(&rd.dual_weight(&l).unwrap()).unwrap(), l);
        }
    }

    #[test]
    fn sl2_brackets() {
        for m in 0..5 {
            let r = Sl2Rep::new(m);
            let br = |a: &Matrix<Rational>, b: &Matrix<Rational>| a.mul(b).sub(&b.mul(a));
            assert_eq!(br(&r.e, &r.f), r.h);
            assert_eq!(br(&r.h, &r.e), r.e.scale(&rat(2, 1)));
            assert_eq!(br(&r.h, &r.f), r.f.scale(&rat(-2, 1)));
        }
        let t = TensorSpace::new(&[1, 2, 1]);
        let (e, f, h) = (t.action(Gen::E), t.action(Gen::F), t.action(Gen::H));
        assert_eq!(e.mul(&f).sub(&f.mul(&e)), h);
    }

    #[test]
    fn invariant_counts() {
        let rd = RootData::sl2();
        assert_eq!(invariants_dim(&rd, &omega1(2)).unwrap(), 1);
        assert_eq!(invariants_dim(&rd, &omega1(4)).unwrap(), 2);
        assert_eq!(invariants_dim(&rd, &omega1(3)).unwrap(), 0);
        for ms in [vec![1, 1], vec![1, 1, 1, 1], vec![2, 2], vec![2, 1, 1], vec![1, 2, 3], vec![2, 2, 2]] {
            let ls: Vec<Weight> = ms.iter().map(|&m| Weight::from_labels(&[m as i64])).collect();
            let t = TensorSpace::new(&ms);
            assert_eq!(t.invariant_functionals().len(), invariants_dim(&rd, &ls).unwrap());
            assert_eq!(coinvariants_quotient(&rd, &ls).unwrap().dim(), invariants_dim(&rd, &ls).unwrap());
        }
        let a2 = RootData::new(CartanType::A, 2).unwrap();
        assert!(matches!(invariants_dim(&a2, &[]), Err(LieError::UnsupportedAlgebra(_))));
    }

    #[test]
    fn four_point_coinvariant_basis() {
        let rd = RootData::sl2();
        let c = coinvariants_quotient(&rd, &omega1(4)).unwrap();
        assert_eq!(c.basis, vec![c.space.index_of(&[0, 0, 1, 1]), c.space.index_of(&[0, 1, 0, 1])]);
    }

    #[test]
    fn conformal_blocks() {
        let rd = RootData::sl2();
        let ls = omega1(4);
        assert_eq!(conformal_block_dim(&rd, &ls, 1, &z4()).unwrap(), 1);
        assert_eq!(conformal_block_dim(&rd, &ls, 2, &z4()).unwrap(), 2);
        assert_eq!(conformal_block_dim(&rd, &ls, 5, &z4()).unwrap(), 2);
        assert!(matches!(
            conformal_block_dim(&rd, &[Weight::from_labels(&[2]), Weight::from_labels(&[2])], 1, &[rat(0, 1), rat(1, 1)]),
            Err(LieError::LevelViolation { .. })
        ));
        let dup = [rat(0, 1), rat(0, 1), rat(1, 1), rat(2, 1)];
        assert_eq!(conformal_block_dim(&rd, &ls, 1, &dup), Err(LieError::DuplicatePoints(0, 1)));
    }

    #[test]
    fn level_one_relation() {
        // [v] = -((z1-z2)(z3-z4) / ((z1-z3)(z2-z4))) [w] in the level-one quotient
        let rd = RootData::sl2();
        let z = z4();
        let q = conformal_block_quotient(&rd, &omega1(4), 1, &z).unwrap();
        let v = q.space.index_of(&[0, 0, 1, 1]);
        let w = q.space.index_of(&[0, 1, 0, 1]);
        let ratio = -((&z[0] - &z[1]) * (&z[2] - &z[3])) / ((&z[0] - &z[2]) * (&z[1] - &z[3]));
        let mut diff = vec![Rational::zero(); q.space.dim()];
        diff[v] = Rational::one();
        diff[w] = -ratio;
        assert!(q.relations().contains(&diff));
    }
}
