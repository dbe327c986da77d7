//! Pointwise exact values of logarithmic forms as exterior-algebra elements,
//! the diagonal forms on `U × U`, and expansion of top forms in dlog monomials.

use std::collections::BTreeMap;
use std::ops::{Add, Neg, Sub};

use num_traits::{One, Zero};
use thiserror::Error;

use crate::aomoto::{subsets, AomotoSpace, MonomialVector};
use crate::arrangement::{AffineForm, WeightedArrangement};
use crate::exactfield::{random_point_avoiding, FieldError, Point, Rational};
use crate::linalg::{solve_rational, Matrix};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LogFormError {
    #[error("form {0} vanishes at the evaluation point")]
    OnHyperplane(usize),
    #[error("F_{0}(x) = F_{0}(y) at the evaluation point")]
    OnDiagonalSlice(usize),
    #[error("the linear functions F have dependent differentials")]
    DependentFunctions,
    #[error("{w} diagonal factors exceed the dimension {dim}")]
    TooManyFactors { w: usize, dim: usize },
    #[error("top form is not in the span of dlog monomials (certification failed at point {point:?})")]
    NotInSpan { point: Vec<String> },
    #[error("expected a form of degree {expected}, got {got}")]
    DegreeMismatch { expected: usize, got: usize },
    #[error(transparent)]
    Sampling(#[from] FieldError),
}

/// Homogeneous element of `Λ^k` of an `n`-dimensional space, keyed by
/// increasing index sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExteriorElement {
    dim: usize,
    degree: usize,
    terms: BTreeMap<Vec<usize>, Rational>,
}

impl ExteriorElement {
    pub fn zero(dim: usize, degree: usize) -> Self {
        ExteriorElement { dim, degree, terms: BTreeMap::new() }
    }

    pub fn scalar(dim: usize, c: Rational) -> Self {
        let mut e = Self::zero(dim, 0);
        e.insert(vec![], c);
        e
    }

    pub fn covector(coeffs: &[Rational]) -> Self {
        let mut e = Self::zero(coeffs.len(), 1);
        for (i, c) in coeffs.iter().enumerate() {
            e.insert(vec![i], c.clone());
        }
        e
    }

    fn insert(&mut self, key: Vec<usize>, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(key).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, key: &[usize]) -> Rational {
        self.terms.get(key).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<usize>, &Rational)> {
        self.terms.iter()
    }

    pub fn scale(&self, s: &Rational) -> Self {
        let mut out = Self::zero(self.dim, self.degree);
        for (k, v) in &self.terms {
            out.insert(k.clone(), v * s);
        }
        out
    }

    pub fn wedge(&self, o: &ExteriorElement) -> ExteriorElement {
        assert_eq!(self.dim, o.dim, "wedge of elements in different spaces");
        let mut out = Self::zero(self.dim, self.degree + o.degree);
        for (a, x) in &self.terms {
            for (b, y) in &o.terms {
                if let Some((key, sign)) = merge_sign(a, b) {
                    let c = x * y;
                    out.insert(key, if sign { -c } else { c });
                }
            }
        }
        out
    }

    /// Places the element in a larger space, shifting indices by `offset`.
    pub fn embed(&self, dim: usize, offset: usize) -> ExteriorElement {
        let mut out = Self::zero(dim, self.degree);
        for (k, v) in &self.terms {
            out.insert(k.iter().map(|i| i + offset).collect(), v.clone());
        }
        out
    }

    /// Substitutes `dt_i ↦ dt_{map[i]}`.
    pub fn relabel(&self, map: &[usize]) -> ExteriorElement {
        let mut out = Self::zero(self.dim, self.degree);
        for (k, v) in &self.terms {
            let img: Vec<usize> = k.iter().map(|&i| map[i]).collect();
            let inv = (0..img.len())
                .flat_map(|a| (a + 1..img.len()).map(move |b| (a, b)))
                .filter(|&(a, b)| img[a] > img[b])
                .count();
            let mut sorted = img;
            sorted.sort_unstable();
            out.insert(sorted, if inv % 2 == 0 { v.clone() } else { -v.clone() });
        }
        out
    }
}

/// Merged increasing key and whether sorting `a ++ b` is an odd permutation.
fn merge_sign(a: &[usize], b: &[usize]) -> Option<(Vec<usize>, bool)> {
    let mut key = Vec::with_capacity(a.len() + b.len());
    let mut swaps = 0usize;
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i] < b[j]) {
            key.push(a[i]);
            i += 1;
        } else {
            if i < a.len() && a[i] == b[j] {
                return None;
            }
            swaps += a.len() - i;
            key.push(b[j]);
            j += 1;
        }
    }
    Some((key, swaps % 2 == 1))
}

impl Add for &ExteriorElement {
    type Output = ExteriorElement;
    fn add(self, o: &ExteriorElement) -> ExteriorElement {
        assert_eq!((self.dim, self.degree), (o.dim, o.degree), "adding incompatible elements");
        let mut out = self.clone();
        for (k, v) in &o.terms {
            out.insert(k.clone(), v.clone());
        }
        out
    }
}

impl Neg for &ExteriorElement {
    type Output = ExteriorElement;
    fn neg(self) -> ExteriorElement {
        self.scale(&-Rational::one())
    }
}

impl Sub for &ExteriorElement {
    type Output = ExteriorElement;
    fn sub(self, o: &ExteriorElement) -> ExteriorElement {
        self + &(-o)
    }
}

/// `dlog f = df / f` at `point`.
pub fn eval_dlog(form: &AffineForm, point: &[Rational]) -> Result<ExteriorElement, LogFormError> {
    let v = form.eval(point);
    if v.is_zero() {
        return Err(LogFormError::OnHyperplane(0));
    }
    Ok(ExteriorElement::covector(&form.gradient.iter().map(|g| g / &v).collect::<Vec<_>>()))
}

fn dlogs(arr: &WeightedArrangement, point: &[Rational]) -> Result<Vec<ExteriorElement>, LogFormError> {
    arr.forms()
        .iter()
        .enumerate()
        .map(|(i, f)| eval_dlog(f, point).map_err(|_| LogFormError::OnHyperplane(i)))
        .collect()
}

/// Values of `dlog f_i^{(1)}` and `dlog f_i^{(2)}` at `(x, y)` in the `2M`-dimensional space.
fn diagonal_dlogs(
    arr: &WeightedArrangement,
    x: &[Rational],
    y: &[Rational],
) -> Result<(Vec<ExteriorElement>, Vec<ExteriorElement>), LogFormError> {
    let m = arr.dimension();
    let first = dlogs(arr, x)?.iter().map(|e| e.embed(2 * m, 0)).collect();
    let second = dlogs(arr, y)?.iter().map(|e| e.embed(2 * m, m)).collect();
    Ok((first, second))
}

/// `η = Σ a_i dlog f_i` at `point`.
pub fn eval_eta(arr: &WeightedArrangement, point: &[Rational]) -> Result<ExteriorElement, LogFormError> {
    let mut out = ExteriorElement::zero(arr.dimension(), 1);
    for (d, a) in dlogs(arr, point)?.iter().zip(arr.weights()) {
        out = &out + &d.scale(a);
    }
    Ok(out)
}

/// `η^{(1)} - η^{(2)}` at `(x, y)`.
pub fn eval_eta_difference(arr: &WeightedArrangement, x: &[Rational], y: &[Rational]) -> Result<ExteriorElement, LogFormError> {
    let m = arr.dimension();
    Ok(&eval_eta(arr, x)?.embed(2 * m, 0) - &eval_eta(arr, y)?.embed(2 * m, m))
}

/// `S^{(b)} = Σ_{i_1<…<i_b} Π_s a_{i_s} dlog f^{(1)}_{i_s} ∧ dlog f^{(2)}_{i_s}` at `(x, y)`.
pub fn eval_s_b(arr: &WeightedArrangement, b: usize, x: &[Rational], y: &[Rational]) -> Result<ExteriorElement, LogFormError> {
    let n = 2 * arr.dimension();
    let (d1, d2) = diagonal_dlogs(arr, x, y)?;
    let pairs: Vec<ExteriorElement> = d1.iter().zip(&d2).map(|(a, b)| a.wedge(b)).collect();
    let mut out = ExteriorElement::zero(n, 2 * b);
    for set in subsets(arr.num_forms(), b) {
        let mut term = ExteriorElement::scalar(n, Rational::one());
        for &i in &set {
            term = term.wedge(&pairs[i].scale(arr.weight(i)));
        }
        out = &out + &term;
    }
    Ok(out)
}

/// Linear functions `F_1, …, F_M` and an index list `q` selecting the factors
/// `dlog(F_q(x) - F_q(y))`.
#[derive(Clone, Debug)]
pub struct DiagonalFormSpec {
    pub functions: Vec<AffineForm>,
    pub q: Vec<usize>,
}

impl DiagonalFormSpec {
    /// `F_j = t_j`.
    pub fn coordinates(dim: usize, q: Vec<usize>) -> Self {
        let functions = (0..dim).map(|b| AffineForm::coordinate_minus(dim, b, Rational::zero())).collect();
        DiagonalFormSpec { functions, q }
    }

    pub fn check(&self, dim: usize) -> Result<(), LogFormError> {
        let g = Matrix::from_rows_with_cols(dim, self.functions.iter().map(|f| f.gradient.clone()).collect());
        if self.functions.len() != dim || g.rank() != dim {
            return Err(LogFormError::DependentFunctions);
        }
        if self.q.len() > dim {
            return Err(LogFormError::TooManyFactors { w: self.q.len(), dim });
        }
        Ok(())
    }

    /// `F_j(x) - F_j(y)` as a form on the `2M`-dimensional space.
    pub fn difference_form(&self, j: usize) -> AffineForm {
        let f = &self.functions[j];
        let mut g = f.gradient.clone();
        g.extend(f.gradient.iter().map(|c| -c));
        AffineForm::new(Rational::zero(), g)
    }
}

/// `S_{q_1…q_w} = S^{(M-w)} ∧ Π_j dlog(F_{q_j}^{(1)} - F_{q_j}^{(2)})`.
pub fn eval_s_mixed(
    arr: &WeightedArrangement,
    spec: &DiagonalFormSpec,
    x: &[Rational],
    y: &[Rational],
) -> Result<ExteriorElement, LogFormError> {
    let m = arr.dimension();
    spec.check(m)?;
    let mut out = eval_s_b(arr, m - spec.q.len(), x, y)?;
    let xy: Vec<Rational> = x.iter().chain(y).cloned().collect();
    for &j in &spec.q {
        let d = eval_dlog(&spec.difference_form(j), &xy).map_err(|_| LogFormError::OnDiagonalSlice(j))?;
        out = out.wedge(&d);
    }
    Ok(out)
}

/// Outcome of checking `Σ_j (-1)^{j+1} S_{q…q̂_j…} = (η^{(1)} - η^{(2)}) ∧ S_q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityCheck {
    pub holds: bool,
    pub points_checked: usize,
    pub index_sets_checked: usize,
    /// `(x, y, q)` at the first failure.
    pub witness: Option<(Point, Point, Vec<usize>)>,
}

/// Default sampling box half-width.
pub const DEFAULT_BOUND: u64 = 1_000_000;

/// Samples `(x, y)` off every hyperplane in both copies and off every diagonal slice.
pub fn sample_diagonal_point(
    arr: &WeightedArrangement,
    spec: &DiagonalFormSpec,
    bound: u64,
    seed: u64,
) -> Result<(Point, Point), LogFormError> {
    let m = arr.dimension();
    let mut avoid: Vec<AffineForm> = Vec::new();
    for f in arr.forms() {
        let mut gx = f.gradient.clone();
        gx.extend(vec![Rational::zero(); m]);
        avoid.push(AffineForm::new(f.constant.clone(), gx));
        let mut gy = vec![Rational::zero(); m];
        gy.extend(f.gradient.iter().cloned());
        avoid.push(AffineForm::new(f.constant.clone(), gy));
    }
    avoid.extend((0..spec.functions.len()).map(|j| spec.difference_form(j)));
    let p = random_point_avoiding(&avoid, 2 * m, bound, seed)?;
    let (x, y) = p.split_at(m);
    Ok((x.to_vec(), y.to_vec()))
}

/// Checks the identity for every `k`-subset `q` of the functions at
/// `num_points` random points, with the left side built from `lhs` and the
/// right side from `rhs`. Equal arrangements give the genuine identity.
pub fn verify_grundlegend_pair(
    lhs: &WeightedArrangement,
    rhs: &WeightedArrangement,
    functions: &[AffineForm],
    k: usize,
    num_points: usize,
    seed: u64,
) -> Result<IdentityCheck, LogFormError> {
    let m = rhs.dimension();
    let base = DiagonalFormSpec { functions: functions.to_vec(), q: vec![] };
    base.check(m)?;
    if k == 0 || k > m {
        return Err(LogFormError::TooManyFactors { w: k, dim: m });
    }
    let qs = subsets(m, k);
    for s in 0..num_points {
        let (x, y) = sample_diagonal_point(rhs, &base, DEFAULT_BOUND, seed.wrapping_add(s as u64))?;
        for q in &qs {
            let mut left = ExteriorElement::zero(2 * m, 2 * m - k + 1);
            for j in 0..k {
                let mut hat = q.clone();
                hat.remove(j);
                let spec = DiagonalFormSpec { functions: functions.to_vec(), q: hat };
                let term = eval_s_mixed(lhs, &spec, &x, &y)?;
                left = if j % 2 == 0 { &left + &term } else { &left - &term };
            }
            let spec = DiagonalFormSpec { functions: functions.to_vec(), q: q.clone() };
            let right = eval_eta_difference(rhs, &x, &y)?.wedge(&eval_s_mixed(rhs, &spec, &x, &y)?);
            if left != right {
                return Ok(IdentityCheck {
                    holds: false,
                    points_checked: s + 1,
                    index_sets_checked: qs.len(),
                    witness: Some((x, y, q.clone())),
                });
            }
        }
    }
    Ok(IdentityCheck { holds: true, points_checked: num_points, index_sets_checked: qs.len(), witness: None })
}

pub fn verify_grundlegend(
    arr: &WeightedArrangement,
    functions: &[AffineForm],
    k: usize,
    num_points: usize,
    seed: u64,
) -> Result<IdentityCheck, LogFormError> {
    verify_grundlegend_pair(arr, arr, functions, k, num_points, seed)
}

/// Coefficient of `dt_1 ∧ … ∧ dt_M` in `dlog f_{i_1} ∧ … ∧ dlog f_{i_M}` at `point`.
pub fn eval_top_monomial(arr: &WeightedArrangement, set: &[usize], point: &[Rational]) -> Result<Rational, LogFormError> {
    let m = arr.dimension();
    let mut prod = Rational::one();
    let mut rows = Vec::with_capacity(set.len());
    for &i in set {
        let v = arr.forms()[i].eval(point);
        if v.is_zero() {
            return Err(LogFormError::OnHyperplane(i));
        }
        prod *= v;
        rows.push(arr.forms()[i].gradient.clone());
    }
    Ok(determinant(Matrix::from_rows_with_cols(m, rows)) / prod)
}

fn determinant(m: Matrix<Rational>) -> Rational {
    let n = m.nrows();
    let mut a = m;
    let mut det = Rational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !a[(r, c)].is_zero()) else { return Rational::zero() };
        if p != c {
            for j in 0..n {
                let t = a[(p, j)].clone();
                a[(p, j)] = a[(c, j)].clone();
                a[(c, j)] = t;
            }
            det = -det;
        }
        let piv = a[(c, c)].clone();
        det *= &piv;
        for r in c + 1..n {
            let f = &a[(r, c)] / &piv;
            if f.is_zero() {
                continue;
            }
            for j in c..n {
                let t = &f * &a[(c, j)];
                a[(r, j)] -= t;
            }
        }
    }
    det
}

/// Coefficient of the volume form in a top-degree element.
pub fn top_coefficient(e: &ExteriorElement) -> Result<Rational, LogFormError> {
    if e.degree() != e.dim() {
        return Err(LogFormError::DegreeMismatch { expected: e.dim(), got: e.degree() });
    }
    Ok(e.coeff(&(0..e.dim()).collect::<Vec<_>>()))
}

/// Number of extra certification points beyond the dimension of `A^M`.
pub const CERTIFICATION_POINTS: usize = 3;

/// Writes a top form, given pointwise by `evaluator` (coefficient of
/// `dt_1 ∧ … ∧ dt_M`), as a combination of the pivot monomials of `A^M`.
pub fn expand_top_form<E>(
    evaluator: E,
    arr: &WeightedArrangement,
    top: &AomotoSpace<Rational>,
    seed: u64,
) -> Result<MonomialVector<Rational>, LogFormError>
where
    E: Fn(&[Rational]) -> Result<Rational, LogFormError>,
{
    let m = arr.dimension();
    let pivots = top.phi.independent_rows();
    let npts = pivots.len() + CERTIFICATION_POINTS;
    let mut rows = Vec::with_capacity(npts);
    let mut rhs = Vec::with_capacity(npts);
    let mut points = Vec::with_capacity(npts);
    for s in 0..npts {
        let p = random_point_avoiding(arr.forms(), m, DEFAULT_BOUND, seed.wrapping_add(s as u64))?;
        // clearing Π f_i(p) makes the monomial entries integers
        let clear = arr.forms().iter().fold(Rational::one(), |acc, f| acc * f.eval(&p));
        let row = pivots
            .iter()
            .map(|&i| eval_top_monomial(arr, &top.subsets[i], &p).map(|v| v * &clear))
            .collect::<Result<Vec<_>, _>>()?;
        rows.push(row);
        rhs.push(evaluator(&p)? * &clear);
        points.push(p);
    }
    let a = Matrix::from_rows_with_cols(pivots.len(), rows);
    let Some(c) = solve_rational(&a, &rhs) else {
        // locate the first point at which the prefix system becomes inconsistent
        let bad = (1..=npts)
            .find(|&k| solve_rational(&a.select_rows(&(0..k).collect::<Vec<_>>()), &rhs[..k]).is_none())
            .unwrap_or(npts);
        return Err(LogFormError::NotInSpan { point: points[bad - 1].iter().map(|x| x.to_string()).collect() });
    };
    let mut out = MonomialVector::zero(arr.num_forms(), m);
    for (&i, ci) in pivots.iter().zip(c) {
        out.coeffs[i] = ci;
    }
    Ok(out)
}

/// Pointwise value of `Σ_I c_I dlog f_I` as a volume-form coefficient.
pub fn eval_monomial_vector(arr: &WeightedArrangement, v: &MonomialVector<Rational>, point: &[Rational]) -> Result<Rational, LogFormError> {
    let sets = subsets(arr.num_forms(), v.degree);
    let mut total = Rational::zero();
    for (set, c) in sets.iter().zip(&v.coeffs) {
        if !c.is_zero() {
            total += c * eval_top_monomial(arr, set, point)?;
        }
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::intersection_lattice;
    use crate::exactfield::rat;

    fn form(c: i64, g: &[i64]) -> AffineForm {
        AffineForm::new(rat(c, 1), g.iter().map(|&x| rat(x, 1)).collect())
    }

    fn two_points() -> WeightedArrangement {
        WeightedArrangement::new(1, vec![form(-1, &[1]), form(1, &[1])], vec![rat(1, 3), rat(2, 5)], None).unwrap()
    }

    #[test]
    fn dlog_examples() {
        assert_eq!(eval_dlog(&form(0, &[1]), &[rat(2, 1)]).unwrap(), ExteriorElement::covector(&[rat(1, 2)]));
        assert_eq!(
            eval_dlog(&form(0, &[1, -1]), &[rat(3, 1), rat(1, 1)]).unwrap(),
            ExteriorElement::covector(&[rat(1, 2), rat(-1, 2)])
        );
        assert_eq!(eval_dlog(&form(1, &[2]), &[rat(1, 1)]).unwrap(), ExteriorElement::covector(&[rat(2, 3)]));
        assert!(eval_dlog(&form(0, &[1]), &[rat(0, 1)]).is_err());
    }

    #[test]
    fn wedge_signs() {
        let dx = ExteriorElement::covector(&[rat(1, 1), rat(0, 1), rat(0, 1)]);
        let dy = ExteriorElement::covector(&[rat(0, 1), rat(1, 1), rat(0, 1)]);
        assert_eq!(dx.wedge(&dy), -&dy.wedge(&dx));
        assert!(dx.wedge(&dx).is_zero());
    }

    #[test]
    fn s_b_examples() {
        let a = WeightedArrangement::new(1, vec![form(0, &[1])], vec![rat(7, 1)], None).unwrap();
        let s0 = eval_s_b(&a, 0, &[rat(2, 1)], &[rat(3, 1)]).unwrap();
        assert_eq!(s0, ExteriorElement::scalar(2, rat(1, 1)));
        let s1 = eval_s_b(&a, 1, &[rat(2, 1)], &[rat(3, 1)]).unwrap();
        assert_eq!(s1.coeff(&[0, 1]), rat(7, 6));

        // two forms: brute-force sum of both wedge terms
        let a = two_points();
        let (x, y) = (rat(4, 1), rat(-3, 1));
        let s = eval_s_b(&a, 1, &[x.clone()], &[y.clone()]).unwrap();
        let expect = rat(1, 3) / ((&x - rat(1, 1)) * (&y - rat(1, 1))) + rat(2, 5) / ((&x + rat(1, 1)) * (&y + rat(1, 1)));
        assert_eq!(s.coeff(&[0, 1]), expect);
    }

    #[test]
    fn mixed_examples() {
        let a = WeightedArrangement::new(1, vec![form(0, &[1])], vec![rat(5, 1)], None).unwrap();
        let (x, y) = ([rat(2, 1)], [rat(3, 1)]);
        let spec = DiagonalFormSpec::coordinates(1, vec![0]);
        let s1 = eval_s_mixed(&a, &spec, &x, &y).unwrap();
        // dlog(x - y) = (dx - dy)/(x - y)
        assert_eq!(s1, ExteriorElement::covector(&[rat(-1, 1), rat(1, 1)]));
        let lhs = eval_eta_difference(&a, &x, &y).unwrap().wedge(&s1);
        assert_eq!(lhs.coeff(&[0, 1]), rat(5, 6));
        let w0 = eval_s_mixed(&a, &DiagonalFormSpec::coordinates(1, vec![]), &x, &y).unwrap();
        assert_eq!(w0, eval_s_b(&a, 1, &x, &y).unwrap());
        let b = WeightedArrangement::new(1, vec![form(0, &[1])], vec![rat(-9, 1)], None).unwrap();
        assert_eq!(eval_s_mixed(&b, &spec, &x, &y).unwrap(), s1);
        assert_eq!(eval_s_mixed(&a, &spec, &x, &x), Err(LogFormError::OnDiagonalSlice(0)));
    }

    #[test]
    fn identity_on_two_points() {
        let a = two_points();
        let fs = DiagonalFormSpec::coordinates(1, vec![]).functions;
        assert!(verify_grundlegend(&a, &fs, 1, 5, 11).unwrap().holds);
        let wrong = a.with_weights(vec![rat(1, 3), rat(3, 5)]).unwrap();
        let r = verify_grundlegend_pair(&wrong, &a, &fs, 1, 5, 11).unwrap();
        assert!(!r.holds);
        assert!(r.witness.is_some());
    }

    #[test]
    fn expansion_of_monomials() {
        let a = WeightedArrangement::new(
            2,
            vec![form(0, &[1, 0]), form(0, &[0, 1]), form(-1, &[1, 1]), form(2, &[1, -1])],
            vec![rat(1, 1); 4],
            None,
        )
        .unwrap();
        let l = intersection_lattice(&a);
        let top = AomotoSpace::new(&l, 2);
        let pivots = top.phi.independent_rows();
        let i0 = pivots[1];
        let set = top.subsets[i0].clone();
        let e = expand_top_form(|p| eval_top_monomial(&a, &set, p), &a, &top, 3).unwrap();
        assert_eq!(e, MonomialVector::unit(4, &set));
        let (s1, s2) = (top.subsets[pivots[0]].clone(), top.subsets[pivots[2]].clone());
        let e = expand_top_form(|p| Ok(eval_top_monomial(&a, &s1, p)? + eval_top_monomial(&a, &s2, p)?), &a, &top, 3).unwrap();
        let mut expect = MonomialVector::unit(4, &s1);
        expect.coeffs[pivots[2]] = rat(1, 1);
        assert_eq!(e, expect);
        let bad = expand_top_form(|p| Ok(&p[0] * &p[1]), &a, &top, 3);
        assert!(matches!(bad, Err(LogFormError::NotInSpan { .. })));
    }
}
