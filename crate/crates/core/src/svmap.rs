//! Discriminantal arrangements built from representation data, the
//! Schechtman–Varchenko vector and form, and the comparison of the form's
//! image with the Shapovalov image in top cohomology.

use std::collections::BTreeMap;

use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::aomoto::{chi_projector, shapovalov_image, AomotoComplex, AomotoError, MonomialVector};
use crate::arrangement::{color_group, intersection_lattice, permutations, AffineForm, ArrangementError, WeightedArrangement};
use crate::exactfield::{Field, RatFuncKappa, Rational};
use crate::liealg::{sl2_highest_weights, weight_pairing, LieError, RootData, TensorSpace, Weight};
use crate::logforms::{expand_top_form, LogFormError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SvError {
    #[error("Σλ_i - Σβ(b) = {0:?} in simple-root coordinates, expected 0")]
    WeightMismatch(Vec<String>),
    #[error("simple root index {0} out of range")]
    BadColor(usize),
    #[error("marked points {0} and {1} coincide")]
    DuplicatePoints(usize, usize),
    #[error("kappa must be nonzero")]
    ZeroKappa,
    #[error("{points} points for {weights} weights")]
    PointCount { points: usize, weights: usize },
    #[error("functional has {got} coefficients, the zero-weight space has dimension {expected}")]
    FunctionalLength { got: usize, expected: usize },
    #[error("evaluation point lies on t_{b} = {what}")]
    OnHyperplane { b: usize, what: String },
    #[error("no variables: the arrangement would be zero-dimensional")]
    NoVariables,
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    Arrangement(#[from] ArrangementError),
    #[error(transparent)]
    Aomoto(#[from] AomotoError),
    #[error(transparent)]
    LogForm(#[from] LogFormError),
}

/// Representation data: weights at marked points, `κ`, and a coloring of the
/// variables by simple roots.
#[derive(Clone, Debug)]
pub struct RepArrangementInput {
    pub root_data: RootData,
    pub weights: Vec<Weight>,
    pub points: Vec<Rational>,
    pub kappa: Rational,
    /// Simple root index of each variable; defaults to the sorted decomposition of `Σλ_i`.
    pub beta: Option<Vec<usize>>,
}

impl RepArrangementInput {
    /// sl2 input with highest weights `m_i ω`.
    pub fn sl2(ms: &[i64], points: Vec<Rational>, kappa: Rational) -> Self {
        RepArrangementInput {
            root_data: RootData::sl2(),
            weights: ms.iter().map(|&m| Weight::from_labels(&[m])).collect(),
            points,
            kappa,
            beta: None,
        }
    }

    /// `β`, either as given or as the sorted multiset decomposition of `μ = Σλ_i`.
    pub fn resolved_beta(&self) -> Result<Vec<usize>, SvError> {
        let rd = &self.root_data;
        let mut mu = vec![Rational::zero(); rd.rank];
        for w in &self.weights {
            for (m, c) in mu.iter_mut().zip(rd.to_root_coords(w)?) {
                *m += c;
            }
        }
        let beta = match &self.beta {
            Some(b) => {
                if let Some(&bad) = b.iter().find(|&&i| i >= rd.rank) {
                    return Err(SvError::BadColor(bad));
                }
                b.clone()
            }
            None => {
                if mu.iter().any(|c| !c.is_integer() || c.is_negative()) {
                    return Err(SvError::WeightMismatch(mu.iter().map(|c| c.to_string()).collect()));
                }
                mu.iter()
                    .enumerate()
                    .flat_map(|(i, c)| std::iter::repeat(i).take(c.to_integer().to_usize().unwrap()))
                    .collect()
            }
        };
        for &i in &beta {
            mu[i] -= Rational::one();
        }
        if mu.iter().any(|c| !c.is_zero()) {
            return Err(SvError::WeightMismatch(mu.iter().map(|c| c.to_string()).collect()));
        }
        Ok(beta)
    }

    fn validate(&self) -> Result<(), SvError> {
        if self.kappa.is_zero() {
            return Err(SvError::ZeroKappa);
        }
        if self.points.len() != self.weights.len() {
            return Err(SvError::PointCount { points: self.points.len(), weights: self.weights.len() });
        }
        for i in 0..self.points.len() {
            for j in 0..i {
                if self.points[i] == self.points[j] {
                    return Err(SvError::DuplicatePoints(j, i));
                }
            }
        }
        Ok(())
    }
}

/// A discriminantal arrangement with the bookkeeping needed to read off forms.
#[derive(Clone, Debug)]
pub struct SvArrangement<F = Rational> {
    pub arrangement: WeightedArrangement<F>,
    pub beta: Vec<usize>,
    /// `point_form[b][i]`: index of `t_b - z_i`, absent when its weight is zero and omitted.
    pub point_form: Vec<Vec<Option<usize>>>,
    /// Index of `t_b - t_c` for `b < c`.
    pub pair_form: BTreeMap<(usize, usize), usize>,
}

fn build_with<F: Field>(
    input: &RepArrangementInput,
    keep_zero_weights: bool,
    scale: impl Fn(Rational) -> F,
) -> Result<SvArrangement<F>, SvError> {
    input.validate()?;
    let beta = input.resolved_beta()?;
    let m = beta.len();
    if m == 0 {
        return Err(SvError::NoVariables);
    }
    let rd = &input.root_data;
    let mut forms = Vec::new();
    let mut weights = Vec::new();
    let mut point_form = vec![vec![None; input.points.len()]; m];
    for (b, &color) in beta.iter().enumerate() {
        for (i, (lam, z)) in input.weights.iter().zip(&input.points).enumerate() {
            let w = weight_pairing(rd, lam, &rd.simple_root(color))?;
            if w.is_zero() && !keep_zero_weights {
                continue;
            }
            point_form[b][i] = Some(forms.len());
            forms.push(AffineForm::coordinate_minus(m, b, z.clone()));
            weights.push(scale(w));
        }
    }
    let mut pair_form = BTreeMap::new();
    for b in 0..m {
        for c in b + 1..m {
            let w = -weight_pairing(rd, &rd.simple_root(beta[b]), &rd.simple_root(beta[c]))?;
            if w.is_zero() && !keep_zero_weights {
                continue;
            }
            pair_form.insert((b, c), forms.len());
            forms.push(AffineForm::difference(m, b, c));
            weights.push(scale(w));
        }
    }
    let arrangement = WeightedArrangement::new(m, forms, weights, Some(beta.clone()))?;
    Ok(SvArrangement { arrangement, beta, point_form, pair_form })
}

/// Hyperplanes `t_b - z_i` with weight `(λ_i, β(b))/κ` and `t_b - t_c` with
/// weight `-(β(b), β(c))/κ`; zero-weight hyperplanes are omitted unless
/// `keep_zero_weights`.
pub fn build_arrangement(input: &RepArrangementInput, keep_zero_weights: bool) -> Result<SvArrangement, SvError> {
    let k = input.kappa.clone();
    build_with(input, keep_zero_weights, |w| w / &k)
}

/// Same arrangement with weights kept as rational functions of `κ` (the
/// `kappa` field of `input` is ignored apart from being nonzero).
pub fn build_arrangement_symbolic(input: &RepArrangementInput, keep_zero_weights: bool) -> Result<SvArrangement<RatFuncKappa>, SvError> {
    build_with(input, keep_zero_weights, RatFuncKappa::over_kappa)
}

/// Ordered assignments of the variables to marked points, as parts.
fn assignments(m: usize, n: usize) -> Vec<Vec<Vec<usize>>> {
    let mut out = Vec::new();
    let total = n.pow(m as u32);
    for code in 0..total {
        let mut parts = vec![Vec::new(); n];
        let mut c = code;
        for b in 0..m {
            parts[c % n].push(b);
            c /= n;
        }
        out.push(parts);
    }
    out
}

/// `Σ_{orderings} 1/((u_1-u_2)(u_2-u_3)…(u_q-z))` over the variables in `part`.
fn part_coefficient(part: &[usize], t: &[Rational], z: &Rational) -> Rational {
    let mut total = Rational::zero();
    for perm in permutations(part.len()) {
        let u: Vec<&Rational> = perm.iter().map(|&k| &t[part[k]]).collect();
        let mut den = Rational::one();
        for w in u.windows(2) {
            den *= w[0] - w[1];
        }
        if let Some(last) = u.last() {
            den *= *last - z;
        }
        total += Rational::one() / den;
    }
    total
}

/// `v(t⃗, z⃗)` in `V(λ⃗)` (all basis vectors, nonzero only in weight zero).
pub fn sv_vector_eval(input: &RepArrangementInput, t: &[Rational]) -> Result<Vec<Rational>, SvError> {
    let ms = sl2_highest_weights(&input.root_data, &input.weights)?;
    let space = TensorSpace::new(&ms);
    let z = &input.points;
    for (b, tb) in t.iter().enumerate() {
        if let Some(i) = z.iter().position(|zi| zi == tb) {
            return Err(SvError::OnHyperplane { b, what: format!("z_{i}") });
        }
        if let Some(c) = t[..b].iter().position(|tc| tc == tb) {
            return Err(SvError::OnHyperplane { b, what: format!("t_{c}") });
        }
    }
    let mut v = vec![Rational::zero(); space.dim()];
    for parts in assignments(t.len(), ms.len()) {
        if parts.iter().zip(&ms).any(|(p, &m)| p.len() > m) {
            continue;
        }
        let coeff = parts
            .iter()
            .zip(z)
            .fold(Rational::one(), |acc, (p, zi)| acc * part_coefficient(p, t, zi));
        // f^q w_0 = w_q in every factor
        let multi: Vec<usize> = parts.iter().map(Vec::len).collect();
        v[space.index_of(&multi)] += coeff;
    }
    Ok(v)
}

/// `Ω^SV(ψ)`: the top form `ψ(v(t⃗, z⃗)) dt_1 ∧ … ∧ dt_M` in dlog monomials.
/// `psi` is indexed by the zero-weight basis of `V(λ⃗)` in lexicographic order.
pub fn omega_sv(
    input: &RepArrangementInput,
    sv: &SvArrangement,
    complex: &AomotoComplex<Rational>,
    psi: &[Rational],
    seed: u64,
) -> Result<MonomialVector<Rational>, SvError> {
    let ms = sl2_highest_weights(&input.root_data, &input.weights)?;
    let space = TensorSpace::new(&ms);
    let zero = space.zero_weight_indices();
    if psi.len() != zero.len() {
        return Err(SvError::FunctionalLength { got: psi.len(), expected: zero.len() });
    }
    let top = &complex.spaces[complex.top_degree()];
    let eval = |p: &[Rational]| -> Result<Rational, LogFormError> {
        let v = sv_vector_eval(input, p).map_err(|_| LogFormError::OnHyperplane(0))?;
        Ok(zero.iter().zip(psi).fold(Rational::zero(), |acc, (&k, c)| acc + c * &v[k]))
    };
    Ok(expand_top_form(eval, &sv.arrangement, top, seed)?)
}

/// Restricts a functional on `V(λ⃗)` to the zero-weight basis.
pub fn restrict_to_zero_weight(space: &TensorSpace, psi: &[Rational]) -> Vec<Rational> {
    space.zero_weight_indices().iter().map(|&k| psi[k].clone()).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EgregiumReport {
    pub invariants_dim: usize,
    pub sv_rank: usize,
    pub image_rank: usize,
    pub subspaces_equal: bool,
    pub chi_fixed: bool,
    pub top_cohomology_dim: usize,
    pub num_hyperplanes: usize,
}

/// Computes the span of `[Ω^SV(ψ)]` over invariant `ψ` and the `χ`-Shapovalov
/// image, and compares them inside `H^M`.
pub fn egregium_check(input: &RepArrangementInput, seed: u64) -> Result<EgregiumReport, SvError> {
    let ms = sl2_highest_weights(&input.root_data, &input.weights)?;
    let space = TensorSpace::new(&ms);
    let sv = build_arrangement(input, false)?;
    let arr = &sv.arrangement;
    let lattice = intersection_lattice(arr);
    let complex = AomotoComplex::new(arr, &lattice);
    let top = complex.top_cohomology();
    let m = complex.top_degree();

    let psis = space.invariant_functionals();
    let svs = psis
        .iter()
        .map(|psi| omega_sv(input, &sv, &complex, &restrict_to_zero_weight(&space, psi), seed).map(|v| v.coeffs))
        .collect::<Result<Vec<_>, _>>()?;
    let image = shapovalov_image(arr, &complex, true)?;
    let proj = chi_projector(arr, &color_group(arr)?, m)?;
    let chi_fixed = svs.iter().all(|v| {
        let pv = proj.vec_mul(v);
        let diff: Vec<Rational> = pv.iter().zip(v).map(|(a, b)| a - b).collect();
        top.is_zero_class(&diff)
    });
    Ok(EgregiumReport {
        invariants_dim: psis.len(),
        sv_rank: top.rank(&svs),
        image_rank: image.rank,
        subspaces_equal: top.same_span(&svs, &image.basis),
        chi_fixed,
        top_cohomology_dim: top.dim(),
        num_hyperplanes: arr.num_forms(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::rat;

    fn z4() -> Vec<Rational> {
        vec![rat(-1, 2), rat(0, 1), rat(1, 2), rat(1, 1)]
    }

    #[test]
    fn two_point_arrangement() {
        let input = RepArrangementInput::sl2(&[1, 1], vec![rat(0, 1), rat(1, 1)], rat(7, 1));
        let sv = build_arrangement(&input, false).unwrap();
        let a = &sv.arrangement;
        assert_eq!(a.dimension(), 1);
        assert_eq!(a.forms(), &[AffineForm::coordinate_minus(1, 0, rat(0, 1)), AffineForm::coordinate_minus(1, 0, rat(1, 1))]);
        assert_eq!(a.weights(), &[rat(1, 7), rat(1, 7)]);
    }

    #[test]
    fn four_point_arrangement() {
        let input = RepArrangementInput::sl2(&[1, 1, 1, 1], z4(), rat(3, 1));
        let sv = build_arrangement(&input, false).unwrap();
        let a = &sv.arrangement;
        assert_eq!(a.num_forms(), 9);
        assert!(a.weights()[..8].iter().all(|w| *w == rat(1, 3)));
        assert_eq!(a.weights()[8], rat(-2, 3));
        assert_eq!(sv.pair_form[&(0, 1)], 8);
        assert_eq!(sv.beta, vec![0, 0]);
    }

    #[test]
    fn mismatched_beta() {
        let mut input = RepArrangementInput::sl2(&[1, 1], vec![rat(0, 1), rat(1, 1)], rat(7, 1));
        input.beta = Some(vec![0, 0]);
        assert!(matches!(build_arrangement(&input, false), Err(SvError::WeightMismatch(_))));
        let odd = RepArrangementInput::sl2(&[1, 1, 1], vec![rat(0, 1), rat(1, 1), rat(2, 1)], rat(7, 1));
        assert!(matches!(build_arrangement(&odd, false), Err(SvError::WeightMismatch(_))));
    }

    #[test]
    fn sv_vector_two_points() {
        let input = RepArrangementInput::sl2(&[1, 1], vec![rat(0, 1), rat(1, 1)], rat(7, 1));
        let t = rat(5, 1);
        let v = sv_vector_eval(&input, &[t.clone()]).unwrap();
        // basis (0,0), (0,1), (1,0), (1,1)
        assert_eq!(v, vec![rat(0, 1), rat(1, 4), rat(1, 5), rat(0, 1)]);
    }

    #[test]
    fn sv_vector_without_variables() {
        let input = RepArrangementInput::sl2(&[0], vec![rat(0, 1)], rat(7, 1));
        assert_eq!(sv_vector_eval(&input, &[]).unwrap(), vec![rat(1, 1)]);
    }

    #[test]
    fn sv_vector_has_weight_zero() {
        let input = RepArrangementInput::sl2(&[1, 1, 1, 1], z4(), rat(3, 1));
        let v = sv_vector_eval(&input, &[rat(3, 7), rat(-5, 11)]).unwrap();
        let space = TensorSpace::new(&[1, 1, 1, 1]);
        for (k, c) in v.iter().enumerate() {
            if !c.is_zero() {
                assert_eq!(space.weight_of(k), 0);
            }
        }
        assert!(v.iter().any(|c| !c.is_zero()));
    }

    #[test]
    fn omega_two_points() {
        let input = RepArrangementInput::sl2(&[1, 1], vec![rat(0, 1), rat(1, 1)], rat(7, 1));
        let sv = build_arrangement(&input, false).unwrap();
        let l = intersection_lattice(&sv.arrangement);
        let c = AomotoComplex::new(&sv.arrangement, &l);
        // invariant: ψ(f v ⊗ v) = 1, ψ(v ⊗ f v) = -1
        let o = omega_sv(&input, &sv, &c, &[rat(-1, 1), rat(1, 1)], 5).unwrap();
        assert_eq!(o.coeffs, vec![rat(1, 1), rat(-1, 1)]);
        let z = omega_sv(&input, &sv, &c, &[rat(0, 1), rat(0, 1)], 5).unwrap();
        assert!(z.coeffs.iter().all(Zero::is_zero));
    }

    #[test]
    fn egregium_two_points() {
        let input = RepArrangementInput::sl2(&[1, 1], vec![rat(0, 1), rat(1, 1)], rat(7, 1));
        let r = egregium_check(&input, 1).unwrap();
        assert_eq!((r.invariants_dim, r.sv_rank, r.image_rank), (1, 1, 1));
        assert!(r.subspaces_equal && r.chi_fixed);
    }

    #[test]
    fn symbolic_weights() {
        let input = RepArrangementInput::sl2(&[1, 1], vec![rat(0, 1), rat(1, 1)], rat(7, 1));
        let sv = build_arrangement_symbolic(&input, false).unwrap();
        assert_eq!(sv.arrangement.weights()[0], RatFuncKappa::over_kappa(rat(1, 1)));
        let c = AomotoComplex::new(&sv.arrangement, &intersection_lattice(&sv.arrangement));
        assert_eq!((c.dim_h(0), c.dim_h(1)), (0, 1));
    }
}
