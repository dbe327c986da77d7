//! Weighted affine hyperplane arrangements and their intersection lattices.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use num_traits::Zero;

use crate::exactfield::{rational_serde, rational_vec_serde, Field, Point, Rational};
use crate::linalg::Matrix;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArrangementError {
    #[error("form {0} has zero gradient")]
    ZeroGradient(usize),
    #[error("form {index} has {got} gradient entries, expected {expected}")]
    DimensionMismatch { index: usize, got: usize, expected: usize },
    #[error("forms {0} and {1} define the same hyperplane")]
    ProportionalForms(usize, usize),
    #[error("{forms} forms but {weights} weights")]
    WeightCount { forms: usize, weights: usize },
    #[error("coloring covers {got} variables, arrangement has {expected}")]
    ColoringDomain { got: usize, expected: usize },
    #[error("arrangement has no coloring")]
    MissingColoring,
    #[error("permutation {0:?} does not map the arrangement to itself")]
    NotASymmetry(Vec<usize>),
    #[error("dimension must be positive")]
    ZeroDimension,
}

/// `constant + Σ gradient_j t_j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AffineForm {
    #[serde(with = "rational_serde")]
    pub constant: Rational,
    #[serde(with = "rational_vec_serde")]
    pub gradient: Vec<Rational>,
}

impl AffineForm {
    pub fn new(constant: Rational, gradient: Vec<Rational>) -> Self {
        AffineForm { constant, gradient }
    }

    /// `t_b - c` in `dim` variables.
    pub fn coordinate_minus(dim: usize, b: usize, c: Rational) -> Self {
        let mut g = vec![Rational::zero(); dim];
        g[b] = Rational::from_integer(1.into());
        AffineForm::new(-c, g)
    }

    /// `t_b - t_c` in `dim` variables.
    pub fn difference(dim: usize, b: usize, c: usize) -> Self {
        let mut g = vec![Rational::zero(); dim];
        g[b] = Rational::from_integer(1.into());
        g[c] = Rational::from_integer((-1).into());
        AffineForm::new(Rational::zero(), g)
    }

    pub fn dim(&self) -> usize {
        self.gradient.len()
    }

    pub fn eval(&self, p: &[Rational]) -> Rational {
        debug_assert_eq!(p.len(), self.gradient.len());
        self.gradient
            .iter()
            .zip(p)
            .fold(self.constant.clone(), |acc, (g, x)| acc + g * x)
    }

    /// Row `[gradient | -constant]` of the system `gradient · t = -constant`.
    pub fn augmented_row(&self) -> Vec<Rational> {
        let mut r = self.gradient.clone();
        r.push(-self.constant.clone());
        r
    }

    /// Some `λ` with `self = λ · other`, if the two are proportional.
    pub fn ratio_to(&self, other: &AffineForm) -> Option<Rational> {
        let a = self.augmented_row();
        let b = other.augmented_row();
        let k = b.iter().position(|x| !x.is_zero())?;
        let lam = &a[k] / &b[k];
        a.iter().zip(&b).all(|(x, y)| *x == &lam * y).then_some(lam)
    }

    /// Pulls the form back along a variable permutation: `t_b ↦ t_{σ(b)}`.
    pub fn permute_variables(&self, sigma: &[usize]) -> AffineForm {
        let mut g = vec![Rational::zero(); self.gradient.len()];
        for (b, coef) in self.gradient.iter().enumerate() {
            g[sigma[b]] = coef.clone();
        }
        AffineForm::new(self.constant.clone(), g)
    }
}

/// Hyperplane arrangement in `dimension` variables with one weight per form
/// and an optional coloring of the variables.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "F: Serialize", deserialize = "F: Deserialize<'de>"))]
pub struct WeightedArrangement<F = Rational> {
    dimension: usize,
    forms: Vec<AffineForm>,
    weights: Vec<F>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    coloring: Option<Vec<usize>>,
}

impl<F: Field> WeightedArrangement<F> {
    pub fn new(
        dimension: usize,
        forms: Vec<AffineForm>,
        weights: Vec<F>,
        coloring: Option<Vec<usize>>,
    ) -> Result<Self, ArrangementError> {
        let arr = WeightedArrangement { dimension, forms, weights, coloring };
        arr.validate()?;
        Ok(arr)
    }

    pub fn validate(&self) -> Result<(), ArrangementError> {
        if self.dimension == 0 {
            return Err(ArrangementError::ZeroDimension);
        }
        if self.forms.len() != self.weights.len() {
            return Err(ArrangementError::WeightCount {
                forms: self.forms.len(),
                weights: self.weights.len(),
            });
        }
        for (i, f) in self.forms.iter().enumerate() {
            if f.dim() != self.dimension {
                return Err(ArrangementError::DimensionMismatch {
                    index: i,
                    got: f.dim(),
                    expected: self.dimension,
                });
            }
            if f.gradient.iter().all(|x| x.is_zero()) {
                return Err(ArrangementError::ZeroGradient(i));
            }
            for j in 0..i {
                if f.ratio_to(&self.forms[j]).is_some() {
                    return Err(ArrangementError::ProportionalForms(j, i));
                }
            }
        }
        if let Some(c) = &self.coloring {
            if c.len() != self.dimension {
                return Err(ArrangementError::ColoringDomain { got: c.len(), expected: self.dimension });
            }
        }
        Ok(())
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn forms(&self) -> &[AffineForm] {
        &self.forms
    }

    pub fn num_forms(&self) -> usize {
        self.forms.len()
    }

    pub fn weights(&self) -> &[F] {
        &self.weights
    }

    pub fn weight(&self, i: usize) -> &F {
        &self.weights[i]
    }

    pub fn coloring(&self) -> Option<&[usize]> {
        self.coloring.as_deref()
    }

    pub fn with_weights(&self, weights: Vec<F>) -> Result<Self, ArrangementError> {
        WeightedArrangement::new(self.dimension, self.forms.clone(), weights, self.coloring.clone())
    }

    pub fn with_coloring(mut self, coloring: Option<Vec<usize>>) -> Result<Self, ArrangementError> {
        self.coloring = coloring;
        self.validate()?;
        Ok(self)
    }

    /// Every weight multiplied by `s`.
    pub fn scaled(&self, s: &F) -> Self {
        WeightedArrangement {
            dimension: self.dimension,
            forms: self.forms.clone(),
            weights: self.weights.iter().map(|w| w.clone() * s.clone()).collect(),
            coloring: self.coloring.clone(),
        }
    }

    /// Same hyperplanes with weights in another field.
    pub fn map_weights<G: Field>(&self, f: impl Fn(&F) -> G) -> WeightedArrangement<G> {
        WeightedArrangement {
            dimension: self.dimension,
            forms: self.forms.clone(),
            weights: self.weights.iter().map(f).collect(),
            coloring: self.coloring.clone(),
        }
    }

    /// Index of the form defining the same hyperplane as `f`, with the ratio.
    pub fn find_form(&self, f: &AffineForm) -> Option<(usize, Rational)> {
        self.forms.iter().enumerate().find_map(|(i, g)| f.ratio_to(g).map(|r| (i, r)))
    }

    /// How a variable permutation permutes hyperplanes: entry `i` is the index
    /// of the image of hyperplane `i`. Fails unless the permutation maps the
    /// arrangement to itself preserving weights.
    pub fn hyperplane_permutation(&self, sigma: &[usize]) -> Result<Vec<usize>, ArrangementError> {
        let mut out = Vec::with_capacity(self.forms.len());
        for (i, f) in self.forms.iter().enumerate() {
            let img = f.permute_variables(sigma);
            match self.find_form(&img) {
                Some((j, _)) if self.weights[j] == self.weights[i] => out.push(j),
                _ => return Err(ArrangementError::NotASymmetry(sigma.to_vec())),
            }
        }
        Ok(out)
    }
}

/// Identifier of an edge: its codimension and position within that level.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct EdgeId {
    pub codim: usize,
    pub index: usize,
}

/// Nonempty intersection of hyperplanes.
#[derive(Clone, Debug, PartialEq)]
pub struct Edge {
    pub codim: usize,
    /// Reduced row echelon form of the augmented defining system; the edge's key.
    pub equations: Vec<Vec<Rational>>,
    pub basis_point: Point,
    pub direction_space: Vec<Vec<Rational>>,
    /// Every hyperplane containing the edge, increasing.
    pub defining_set: Vec<usize>,
}

impl Edge {
    pub fn key(&self) -> &[Vec<Rational>] {
        &self.equations
    }

    pub fn contains_point(&self, p: &[Rational]) -> bool {
        self.equations.iter().all(|row| {
            let (a, b) = row.split_at(row.len() - 1);
            a.iter().zip(p).fold(Rational::zero(), |acc, (x, y)| acc + x * y) == b[0]
        })
    }
}

/// Canonical data of the affine subspace cut out by `rows` (augmented),
/// or `None` if the system is inconsistent.
fn canonical_edge(rows: Vec<Vec<Rational>>, dim: usize) -> Option<(Vec<Vec<Rational>>, usize)> {
    let m = Matrix::from_rows_with_cols(dim + 1, rows);
    let (r, pivots) = m.rref();
    if pivots.last() == Some(&dim) {
        return None;
    }
    Some((r.rows_vec(), pivots.len()))
}

fn in_row_space(reduced: &[Vec<Rational>], row: &[Rational]) -> bool {
    let mut v = row.to_vec();
    for r in reduced {
        let p = r.iter().position(|x| !x.is_zero()).expect("rref row is nonzero");
        if !v[p].is_zero() {
            let f = v[p].clone();
            for (vj, rj) in v.iter_mut().zip(r) {
                *vj -= &f * rj;
            }
        }
    }
    v.iter().all(|x| x.is_zero())
}

/// All edges of an arrangement, graded by codimension.
#[derive(Clone, Debug)]
pub struct IntersectionLattice {
    dimension: usize,
    num_hyperplanes: usize,
    levels: Vec<Vec<Edge>>,
    by_key: HashMap<Vec<Vec<Rational>>, EdgeId>,
    /// `(edge, hyperplane) -> edge ∩ hyperplane` for hyperplanes not containing the edge,
    /// when that intersection is nonempty.
    meets: HashMap<(EdgeId, usize), EdgeId>,
}

/// Builds the lattice by intersecting each codim-`p` edge with each
/// hyperplane not containing it and deduplicating by canonical key.
pub fn intersection_lattice<F: Field>(arr: &WeightedArrangement<F>) -> IntersectionLattice {
    let dim = arr.dimension();
    let rows: Vec<Vec<Rational>> = arr.forms().iter().map(AffineForm::augmented_row).collect();
    let r = rows.len();

    let ambient = Edge {
        codim: 0,
        equations: vec![],
        basis_point: vec![Rational::zero(); dim],
        direction_space: identity_rows(dim),
        defining_set: vec![],
    };
    let mut levels = vec![vec![ambient]];
    let mut meets_raw: Vec<((usize, usize), usize, Vec<Vec<Rational>>)> = Vec::new();

    for p in 0..dim {
        let mut next: BTreeMap<Vec<Vec<Rational>>, Vec<usize>> = BTreeMap::new();
        for (ei, e) in levels[p].iter().enumerate() {
            for h in 0..r {
                if e.defining_set.binary_search(&h).is_ok() {
                    continue;
                }
                let mut sys = e.equations.clone();
                sys.push(rows[h].clone());
                let Some((key, rank)) = canonical_edge(sys, dim) else { continue };
                debug_assert_eq!(rank, p + 1);
                if !next.contains_key(&key) {
                    let defining: Vec<usize> = (0..r).filter(|&j| in_row_space(&key, &rows[j])).collect();
                    next.insert(key.clone(), defining);
                }
                meets_raw.push(((p, ei), h, key));
            }
        }
        let level: Vec<Edge> = next
            .into_iter()
            .map(|(key, defining_set)| {
                let (basis_point, direction_space) = solve_edge(&key, dim);
                Edge { codim: p + 1, equations: key, basis_point, direction_space, defining_set }
            })
            .collect();
        if level.is_empty() {
            break;
        }
        levels.push(level);
    }

    let mut by_key = HashMap::new();
    for (c, level) in levels.iter().enumerate() {
        for (i, e) in level.iter().enumerate() {
            by_key.insert(e.equations.clone(), EdgeId { codim: c, index: i });
        }
    }
    let meets = meets_raw
        .into_iter()
        .map(|((c, i), h, key)| ((EdgeId { codim: c, index: i }, h), by_key[&key]))
        .collect();
    IntersectionLattice { dimension: dim, num_hyperplanes: r, levels, by_key, meets }
}

fn identity_rows(dim: usize) -> Vec<Vec<Rational>> {
    (0..dim)
        .map(|i| (0..dim).map(|j| if i == j { Rational::from_integer(1.into()) } else { Rational::zero() }).collect())
        .collect()
}

fn solve_edge(key: &[Vec<Rational>], dim: usize) -> (Point, Vec<Vec<Rational>>) {
    let m = Matrix::from_rows_with_cols(dim + 1, key.to_vec());
    let a = Matrix::from_fn(m.nrows(), dim, |i, j| m[(i, j)].clone());
    let b: Vec<Rational> = (0..m.nrows()).map(|i| m[(i, dim)].clone()).collect();
    let point = a.solve(&b).expect("edge system is consistent");
    let dirs = Subspace::span_rows(a.nullspace(), dim);
    (point, dirs)
}

struct Subspace;
impl Subspace {
    fn span_rows(v: Vec<Vec<Rational>>, dim: usize) -> Vec<Vec<Rational>> {
        Matrix::from_rows_with_cols(dim, v).rref().0.rows_vec()
    }
}

impl IntersectionLattice {
    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn num_hyperplanes(&self) -> usize {
        self.num_hyperplanes
    }

    /// Highest codimension that has edges.
    pub fn top_codim(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn ambient(&self) -> EdgeId {
        EdgeId { codim: 0, index: 0 }
    }

    pub fn edges(&self, codim: usize) -> &[Edge] {
        self.levels.get(codim).map_or(&[], Vec::as_slice)
    }

    pub fn count(&self, codim: usize) -> usize {
        self.edges(codim).len()
    }

    pub fn edge(&self, id: EdgeId) -> &Edge {
        &self.levels[id.codim][id.index]
    }

    pub fn ids(&self, codim: usize) -> impl Iterator<Item = EdgeId> + '_ {
        (0..self.count(codim)).map(move |index| EdgeId { codim, index })
    }

    pub fn all_ids(&self) -> impl Iterator<Item = EdgeId> + '_ {
        (0..self.levels.len()).flat_map(move |c| self.ids(c))
    }

    pub fn lookup(&self, key: &[Vec<Rational>]) -> Option<EdgeId> {
        self.by_key.get(key).copied()
    }

    /// `edge ∩ H_h` when `H_h` does not contain `edge` and the intersection is nonempty.
    pub fn meet(&self, edge: EdgeId, h: usize) -> Option<EdgeId> {
        self.meets.get(&(edge, h)).copied()
    }

    /// Whether `big ⊇ small` as subsets of affine space.
    pub fn contains(&self, big: EdgeId, small: EdgeId) -> bool {
        let b = &self.edge(big).defining_set;
        let s = &self.edge(small).defining_set;
        big.codim <= small.codim && b.iter().all(|h| s.binary_search(h).is_ok())
    }

    /// The edge `H_{i_1} ∩ … ∩ H_{i_k}` if it is nonempty.
    pub fn intersection_of(&self, hyperplanes: &[usize]) -> Option<EdgeId> {
        let mut cur = self.ambient();
        for &h in hyperplanes {
            if self.edge(cur).defining_set.binary_search(&h).is_ok() {
                continue;
            }
            cur = self.meet(cur, h)?;
        }
        Some(cur)
    }

    /// Möbius function `μ(ambient, X)` for every edge, ordered by reverse inclusion.
    pub fn mobius(&self) -> HashMap<EdgeId, i64> {
        let mut mu = HashMap::new();
        mu.insert(self.ambient(), 1);
        for c in 1..self.levels.len() {
            for x in self.ids(c) {
                let s: i64 = (0..c)
                    .flat_map(|cc| self.ids(cc))
                    .filter(|&y| self.contains(y, x))
                    .map(|y| mu[&y])
                    .sum();
                mu.insert(x, -s);
            }
        }
        mu
    }
}

/// `Σ_{codim X = p} |μ(ambient, X)|`, the dimension of the degree-`p` part of
/// the algebra of logarithmic forms.
pub fn os_dimension(lattice: &IntersectionLattice, p: usize) -> usize {
    let mu = lattice.mobius();
    lattice.ids(p).map(|x| mu[&x].unsigned_abs() as usize).sum()
}

/// Whether `∩_{i∈I} H_i` is nonempty of codimension exactly `|I|`.
pub fn is_general_position<F: Field>(arr: &WeightedArrangement<F>, hyperplanes: &[usize]) -> bool {
    let set: BTreeSet<usize> = hyperplanes.iter().copied().collect();
    if set.len() != hyperplanes.len() || set.len() > arr.dimension() {
        return false;
    }
    let rows = set.iter().map(|&i| arr.forms()[i].augmented_row()).collect();
    matches!(canonical_edge(rows, arr.dimension()), Some((_, rank)) if rank == set.len())
}

/// A coloring-preserving permutation of the variables; `perm[b] = σ(b)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct GroupElement {
    perm: Vec<usize>,
}

impl GroupElement {
    pub fn identity(n: usize) -> Self {
        GroupElement { perm: (0..n).collect() }
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.perm
    }

    pub fn apply(&self, b: usize) -> usize {
        self.perm[b]
    }

    pub fn sign(&self) -> i64 {
        permutation_sign(&self.perm)
    }
}

pub fn permutation_sign(perm: &[usize]) -> i64 {
    let mut seen = vec![false; perm.len()];
    let mut sign = 1;
    for s in 0..perm.len() {
        if seen[s] {
            continue;
        }
        let mut len = 0;
        let mut j = s;
        while !seen[j] {
            seen[j] = true;
            j = perm[j];
            len += 1;
        }
        if len % 2 == 0 {
            sign = -sign;
        }
    }
    sign
}

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(n);
    let mut used = vec![false; n];
    fn rec(n: usize, cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for i in 0..n {
            if !used[i] {
                used[i] = true;
                cur.push(i);
                rec(n, cur, used, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    rec(n, &mut cur, &mut used, &mut out);
    out
}

/// Every permutation of the variables preserving the coloring, in lexicographic order.
pub fn color_group<F: Field>(arr: &WeightedArrangement<F>) -> Result<Vec<GroupElement>, ArrangementError> {
    let coloring = arr.coloring().ok_or(ArrangementError::MissingColoring)?;
    Ok(permutations(arr.dimension())
        .into_iter()
        .filter(|p| p.iter().enumerate().all(|(b, &s)| coloring[s] == coloring[b]))
        .map(|perm| GroupElement { perm })
        .collect())
}
