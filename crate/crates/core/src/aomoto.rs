//! The Aomoto complex `(A^•, η∧)` as linear algebra on dlog monomials.
//!
//! Vectors are coefficient rows over the free monomial space of a degree,
//! indexed by increasing index sets in lexicographic order. `A^p` is that
//! space modulo the left kernel of the flag pairing `Φ_p`; maps are matrices
//! whose rows are the images of basis monomials.

use thiserror::Error;

use crate::arrangement::{color_group, ArrangementError, GroupElement, IntersectionLattice, WeightedArrangement};
use crate::exactfield::Field;
use crate::flags::FlagSpace;
use crate::linalg::{Matrix, Subspace};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AomotoError {
    #[error("degree {p} is the top degree; the differential leaves the complex")]
    TopDegree { p: usize },
    #[error("degree {p} exceeds the dimension {dim}")]
    DegreeOutOfRange { p: usize, dim: usize },
    #[error("vector has {got} coefficients, degree {p} needs {expected}")]
    WrongLength { p: usize, got: usize, expected: usize },
    #[error(transparent)]
    Arrangement(#[from] ArrangementError),
}

/// Increasing `p`-subsets of `0..r` in lexicographic order.
pub fn subsets(r: usize, p: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(p);
    fn rec(start: usize, r: usize, p: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == p {
            out.push(cur.clone());
            return;
        }
        for i in start..r {
            if r - i < p - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, r, p, cur, out);
            cur.pop();
        }
    }
    rec(0, r, p, &mut cur, &mut out);
    out
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Position of the increasing set `set` in [`subsets`]`(r, set.len())`.
pub fn subset_index(r: usize, set: &[usize]) -> usize {
    let p = set.len();
    let mut idx = 0;
    let mut prev = 0;
    for (k, &s) in set.iter().enumerate() {
        for v in prev..s {
            idx += binomial(r - v - 1, p - k - 1);
        }
        prev = s + 1;
    }
    idx
}

/// Coefficients of a degree-`p` element over the free monomial basis.
#[derive(Clone, Debug, PartialEq)]
pub struct MonomialVector<F> {
    pub degree: usize,
    pub coeffs: Vec<F>,
}

impl<F: Field> MonomialVector<F> {
    pub fn zero(r: usize, degree: usize) -> Self {
        MonomialVector { degree, coeffs: vec![F::zero(); binomial(r, degree)] }
    }

    pub fn unit(r: usize, set: &[usize]) -> Self {
        let mut v = Self::zero(r, set.len());
        v.coeffs[subset_index(r, set)] = F::one();
        v
    }
}

/// `Φ_p`: rows are `φ^p` of each increasing index set, columns are raw flags.
pub fn pairing_matrix<F: Field>(lattice: &IntersectionLattice, flags: &FlagSpace) -> Matrix<F> {
    let r = lattice.num_hyperplanes();
    let rows = subsets(r, flags.p)
        .iter()
        .map(|set| flags.phi(lattice, set).to_field())
        .collect();
    Matrix::from_rows_with_cols(flags.len(), rows)
}

/// Degree-`p` piece of the complex: monomials, flags, pairing and its kernel.
#[derive(Clone, Debug)]
pub struct AomotoSpace<F> {
    pub p: usize,
    pub subsets: Vec<Vec<usize>>,
    pub flags: FlagSpace,
    pub phi: Matrix<F>,
    kernel: Subspace<F>,
}

impl<F: Field> AomotoSpace<F> {
    pub fn new(lattice: &IntersectionLattice, p: usize) -> Self {
        let flags = FlagSpace::new(lattice, p);
        let phi = pairing_matrix(lattice, &flags);
        let n = phi.nrows();
        let kernel = Subspace::span(n, &phi.left_nullspace());
        AomotoSpace { p, subsets: subsets(lattice.num_hyperplanes(), p), flags, phi, kernel }
    }

    pub fn num_monomials(&self) -> usize {
        self.subsets.len()
    }

    /// `dim A^p = rank Φ_p`.
    pub fn dim(&self) -> usize {
        self.num_monomials() - self.kernel.dim()
    }

    /// Relations among monomials: the left kernel of `Φ_p`.
    pub fn kernel(&self) -> &Subspace<F> {
        &self.kernel
    }

    /// Whether `v` is zero as an element of `A^p`.
    pub fn is_zero_form(&self, v: &[F]) -> bool {
        self.kernel.contains(v)
    }

    /// The flag functional `v ↦ v Φ_p`.
    pub fn to_flags(&self, v: &[F]) -> Vec<F> {
        self.phi.vec_mul(v)
    }
}

/// Matrix of `η∧` from degree `p` to `p + 1`.
pub fn differential_matrix<F: Field>(arr: &WeightedArrangement<F>, p: usize) -> Matrix<F> {
    let r = arr.num_forms();
    let src = subsets(r, p);
    let tgt_len = binomial(r, p + 1);
    let mut d = Matrix::<F>::zeros(src.len(), tgt_len);
    for (a, set) in src.iter().enumerate() {
        for j in (0..r).filter(|j| set.binary_search(j).is_err()) {
            let before = set.iter().filter(|&&i| i < j).count();
            let mut joined = set.clone();
            joined.insert(before, j);
            let w = arr.weight(j).clone();
            let w = if before % 2 == 0 { w } else { -w };
            let b = subset_index(r, &joined);
            d[(a, b)] = d[(a, b)].clone() + w;
        }
    }
    d
}

/// `η ∧ v`.
pub fn differential<F: Field>(arr: &WeightedArrangement<F>, v: &MonomialVector<F>) -> Result<MonomialVector<F>, AomotoError> {
    let m = arr.dimension();
    if v.degree >= m {
        return Err(AomotoError::TopDegree { p: v.degree });
    }
    let expected = binomial(arr.num_forms(), v.degree);
    if v.coeffs.len() != expected {
        return Err(AomotoError::WrongLength { p: v.degree, got: v.coeffs.len(), expected });
    }
    let d = differential_matrix(arr, v.degree);
    Ok(MonomialVector { degree: v.degree + 1, coeffs: d.vec_mul(&v.coeffs) })
}

/// `a_I = Π_{i∈I} a_i` for every degree-`p` monomial.
pub fn monomial_weights<F: Field>(arr: &WeightedArrangement<F>, p: usize) -> Vec<F> {
    subsets(arr.num_forms(), p)
        .iter()
        .map(|set| set.iter().fold(F::one(), |acc, &i| acc * arr.weight(i).clone()))
        .collect()
}

/// The whole complex with cached pairings and differentials.
#[derive(Clone, Debug)]
pub struct AomotoComplex<F> {
    pub spaces: Vec<AomotoSpace<F>>,
    /// `diffs[p]` maps degree `p` to `p + 1`.
    pub diffs: Vec<Matrix<F>>,
    weights: Vec<F>,
}

impl<F: Field> AomotoComplex<F> {
    pub fn new(arr: &WeightedArrangement<F>, lattice: &IntersectionLattice) -> Self {
        let m = arr.dimension();
        let spaces = (0..=m).map(|p| AomotoSpace::new(lattice, p)).collect();
        let diffs = (0..m).map(|p| differential_matrix(arr, p)).collect();
        AomotoComplex { spaces, diffs, weights: arr.weights().to_vec() }
    }

    pub fn top_degree(&self) -> usize {
        self.spaces.len() - 1
    }

    pub fn dim_a(&self, p: usize) -> usize {
        self.spaces[p].dim()
    }

    /// Rank of `η∧ : A^p → A^{p+1}`.
    pub fn d_rank(&self, p: usize) -> usize {
        if p >= self.top_degree() {
            return 0;
        }
        self.diffs[p].mul(&self.spaces[p + 1].phi).rank()
    }

    pub fn dim_h(&self, p: usize) -> usize {
        let below = if p == 0 { 0 } else { self.d_rank(p - 1) };
        self.dim_a(p) - self.d_rank(p) - below
    }

    /// Cocycles `Z̃^p` in the free monomial space: `d v` vanishes in `A^{p+1}`.
    pub fn cocycles(&self, p: usize) -> Subspace<F> {
        let n = self.spaces[p].num_monomials();
        if p >= self.top_degree() {
            return Subspace::span(n, &Matrix::<F>::identity(n).rows_vec());
        }
        Subspace::span(n, &self.diffs[p].mul(&self.spaces[p + 1].phi).left_nullspace())
    }

    /// Coboundaries plus relations: `B̃^p = η∧(free^{p-1}) + ker Φ_p`.
    pub fn coboundaries(&self, p: usize) -> Subspace<F> {
        let k = self.spaces[p].kernel().clone();
        if p == 0 {
            return k;
        }
        k.join(&self.diffs[p - 1].rows_vec())
    }

    /// `A^M / η∧A^{M-1}`.
    pub fn top_cohomology(&self) -> TopCohomology<F> {
        let m = self.top_degree();
        TopCohomology { relations: self.coboundaries(m) }
    }

    /// Dimension of the `χ`-isotypic part of `H^p`, where `projector` is the
    /// matrix from [`chi_projector`] at degree `p`.
    pub fn chi_dim(&self, p: usize, projector: &Matrix<F>) -> usize {
        let z = project(projector, self.cocycles(p).basis());
        let b = project(projector, self.coboundaries(p).basis());
        let n = self.spaces[p].num_monomials();
        Subspace::span(n, &z).dim() - Subspace::span(n, &b).dim()
    }

    /// Diagonal `S`-map on free top-degree monomials: `e_I ↦ a_I e_I`.
    pub fn s_diagonal(&self) -> Vec<F> {
        let m = self.top_degree();
        self.spaces[m]
            .subsets
            .iter()
            .map(|set| set.iter().fold(F::one(), |acc, &i| acc * self.weights[i].clone()))
            .collect()
    }
}

fn project<F: Field>(projector: &Matrix<F>, basis: &Matrix<F>) -> Vec<Vec<F>> {
    basis.rows_vec().iter().map(|v| projector.vec_mul(v)).collect()
}

/// Top-degree cohomology, kept as the subspace of free monomials that vanish in it.
#[derive(Clone, Debug)]
pub struct TopCohomology<F> {
    relations: Subspace<F>,
}

impl<F: Field> TopCohomology<F> {
    pub fn dim(&self) -> usize {
        self.relations.ambient_dim() - self.relations.dim()
    }

    pub fn relations(&self) -> &Subspace<F> {
        &self.relations
    }

    /// Canonical representative of the class of `v`.
    pub fn reduce(&self, v: &[F]) -> Vec<F> {
        self.relations.reduce(v)
    }

    pub fn is_zero_class(&self, v: &[F]) -> bool {
        self.relations.contains(v)
    }

    /// Dimension of the span of the classes of `vectors`.
    pub fn rank(&self, vectors: &[Vec<F>]) -> usize {
        self.relations.rank_modulo(vectors)
    }

    /// Whether the classes of `a` and of `b` span the same subspace.
    pub fn same_span(&self, a: &[Vec<F>], b: &[Vec<F>]) -> bool {
        let ra = self.rank(a);
        let rb = self.rank(b);
        let mut both = a.to_vec();
        both.extend(b.iter().cloned());
        ra == rb && self.rank(&both) == ra
    }

    /// Functionals on free monomials vanishing on every relation: `τ(η∧A^{M-1}) = 0`.
    pub fn annihilator(&self) -> Vec<Vec<F>> {
        self.relations.basis().nullspace()
    }
}

/// Matrix of `ρ(σ)` on degree-`p` monomials: row `I` is the image of `e_I`.
pub fn monomial_action<F: Field>(
    arr: &WeightedArrangement<F>,
    g: &GroupElement,
    p: usize,
) -> Result<Matrix<F>, AomotoError> {
    let r = arr.num_forms();
    let perm = arr.hyperplane_permutation(g.as_slice())?;
    let src = subsets(r, p);
    let mut m = Matrix::zeros(src.len(), src.len());
    for (a, set) in src.iter().enumerate() {
        let img: Vec<usize> = set.iter().map(|&i| perm[i]).collect();
        let inversions = (0..p).flat_map(|x| (x + 1..p).map(move |y| (x, y))).filter(|&(x, y)| img[x] > img[y]).count();
        let mut sorted = img.clone();
        sorted.sort_unstable();
        let sign = if inversions % 2 == 0 { F::one() } else { -F::one() };
        m[(a, subset_index(r, &sorted))] = sign;
    }
    Ok(m)
}

/// `P = (1/|G|) Σ_σ sign(σ) ρ(σ)` on degree-`p` monomials, rows as images.
pub fn chi_projector<F: Field>(
    arr: &WeightedArrangement<F>,
    group: &[GroupElement],
    p: usize,
) -> Result<Matrix<F>, AomotoError> {
    let n = binomial(arr.num_forms(), p);
    let mut acc = Matrix::zeros(n, n);
    for g in group {
        let rho = monomial_action(arr, g, p)?;
        acc = acc.add(&rho.scale(&F::from_i64(g.sign())));
    }
    Ok(acc.scale(&(F::one() / F::from_i64(group.len() as i64))))
}

/// Image of the composite `(A^M/η∧A^{M-1})^* → A^M^* → A^M → A^M/η∧A^{M-1}`
/// induced by the diagonal `S`-map.
#[derive(Clone, Debug)]
pub struct ShapovalovImage<F> {
    pub rank: usize,
    /// Canonical representatives of an image basis.
    pub basis: Vec<Vec<F>>,
}

/// Applies the `S`-map to functionals `τ` vanishing on the coboundaries, after
/// and before the `χ` projector when `use_chi`.
pub fn shapovalov_image<F: Field>(
    arr: &WeightedArrangement<F>,
    complex: &AomotoComplex<F>,
    use_chi: bool,
) -> Result<ShapovalovImage<F>, AomotoError> {
    let top = complex.top_cohomology();
    let m = complex.top_degree();
    let proj = if use_chi { Some(chi_projector(arr, &color_group(arr)?, m)?) } else { None };
    let a = complex.s_diagonal();
    let images: Vec<Vec<F>> = top
        .annihilator()
        .into_iter()
        .map(|tau| {
            // τ∘P as a functional: (τ∘P)(e_I) = Σ_J P[I][J] τ_J
            let tau = match &proj {
                Some(pm) => pm.mul_vec(&tau),
                None => tau,
            };
            let s: Vec<F> = tau.into_iter().zip(&a).map(|(t, w)| t * w.clone()).collect();
            match &proj {
                Some(pm) => pm.vec_mul(&s),
                None => s,
            }
        })
        .collect();
    let span = top.relations().join(&images);
    let basis = span
        .basis()
        .rows_vec()
        .into_iter()
        .filter(|v| !top.is_zero_class(v))
        .map(|v| top.reduce(&v))
        .collect::<Vec<_>>();
    let basis = Subspace::span(top.relations().ambient_dim(), &basis).basis().rows_vec();
    Ok(ShapovalovImage { rank: span.dim() - top.relations().dim(), basis })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::{intersection_lattice, AffineForm};
    use crate::exactfield::{rat, Rational};

    fn points(ws: &[Rational]) -> WeightedArrangement {
        let forms = vec![
            AffineForm::new(rat(-1, 1), vec![rat(1, 1)]),
            AffineForm::new(rat(1, 1), vec![rat(1, 1)]),
        ];
        WeightedArrangement::new(1, forms, ws.to_vec(), Some(vec![0])).unwrap()
    }

    #[test]
    fn subset_ranking() {
        for (r, p) in [(5, 2), (6, 3), (4, 0), (9, 2)] {
            for (i, s) in subsets(r, p).iter().enumerate() {
                assert_eq!(subset_index(r, s), i);
            }
            assert_eq!(subsets(r, p).len(), binomial(r, p));
        }
    }

    #[test]
    fn pairing_ranks() {
        let a = points(&[rat(1, 1), rat(1, 1)]);
        let l = intersection_lattice(&a);
        let s1 = AomotoSpace::<Rational>::new(&l, 1);
        assert_eq!(s1.phi.rank(), 2);
        for h in 0..2 {
            let f = crate::flags::flag_of_tuple(&l, &[h]).unwrap();
            assert_eq!(s1.phi[(h, s1.flags.index_of(&f).unwrap())], rat(1, 1));
        }
        let s0 = AomotoSpace::<Rational>::new(&l, 0);
        assert_eq!(s0.phi, Matrix::identity(1));
    }

    #[test]
    fn differential_examples() {
        let a = points(&[rat(2, 1), rat(3, 1)]);
        let one = MonomialVector::unit(2, &[]);
        assert_eq!(differential(&a, &one).unwrap().coeffs, vec![rat(2, 1), rat(3, 1)]);
        let e1 = MonomialVector::unit(2, &[0]);
        assert_eq!(differential(&a, &e1), Err(AomotoError::TopDegree { p: 1 }));

        let b = WeightedArrangement::new(
            2,
            vec![
                AffineForm::new(rat(0, 1), vec![rat(1, 1), rat(0, 1)]),
                AffineForm::new(rat(0, 1), vec![rat(0, 1), rat(1, 1)]),
            ],
            vec![rat(2, 1), rat(3, 1)],
            None,
        )
        .unwrap();
        // η∧e_1 = a_2 e_2∧e_1 = -a_2 e_12
        assert_eq!(differential(&b, &MonomialVector::unit(2, &[0])).unwrap().coeffs, vec![rat(-3, 1)]);
        assert_eq!(differential(&b, &MonomialVector::unit(2, &[1])).unwrap().coeffs, vec![rat(2, 1)]);
    }

    #[test]
    fn two_point_cohomology() {
        let a = points(&[rat(2, 1), rat(3, 1)]);
        let c = AomotoComplex::new(&a, &intersection_lattice(&a));
        assert_eq!((c.dim_h(0), c.dim_h(1)), (0, 1));
        let a = points(&[rat(2, 1), rat(-2, 1)]);
        let c = AomotoComplex::new(&a, &intersection_lattice(&a));
        assert_eq!((c.dim_h(0), c.dim_h(1)), (0, 1));
    }

    #[test]
    fn two_point_image() {
        let w = rat(1, 7);
        let a = points(&[w.clone(), w]);
        let c = AomotoComplex::new(&a, &intersection_lattice(&a));
        let img = shapovalov_image(&a, &c, true).unwrap();
        assert_eq!(img.rank, 1);
        // τ ∝ (1, -1) gives S(τ) ∝ e_1 - e_2
        let tau = c.top_cohomology().annihilator();
        assert_eq!(tau.len(), 1);
        assert_eq!(&tau[0][0] + &tau[0][1], rat(0, 1));
    }

    #[test]
    fn trivial_group_projector_is_identity() {
        let a = points(&[rat(1, 1), rat(2, 1)]);
        let g = color_group(&a).unwrap();
        assert_eq!(chi_projector(&a, &g, 1).unwrap(), Matrix::identity(2));
    }
}
