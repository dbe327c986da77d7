//! The KZ connection on coinvariants of sl2 tensor products.
//!
//! Matrices act on column vectors of coinvariant coordinates. The connection
//! in the direction `z_j` is `∂_j + A_j` with
//! `A_j = (1/κ) Σ_{k≠j} Ω_{jk}/(z_j − z_k)`; horizontal sections satisfy
//! `∂_j u = −A_j u`. Point indices are zero-based throughout.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Index, IndexMut};

use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rug::Float;
use serde::Serialize;
use thiserror::Error;

use crate::exactfield::{format_rational, rat, BigComplex, Rational, DEFAULT_PRECISION};
use crate::liealg::{coinvariants_quotient, Coinvariants, Gen, LieError, RootData, Weight};
use crate::linalg::Matrix;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum KzError {
    #[error("points z{} and z{} coincide", .0 + 1, .1 + 1)]
    CollidingPoints(usize, usize),
    #[error("path passes within {distance:e} of z{} (keep-out radius {keep_out:e})", .puncture + 1)]
    PathTooClose { puncture: usize, distance: f64, keep_out: f64 },
    #[error("step size underflow near z = {at}")]
    StepUnderflow { at: String },
    #[error("z{} - z{} lies on the cut of the principal logarithm", .0 + 1, .1 + 1)]
    BranchCut(usize, usize),
    #[error("precision loss: {0}")]
    PrecisionLoss(String),
    #[error("parameters are resonant: {0}")]
    ResonantParameters(String),
    #[error("kappa must be nonzero")]
    ZeroKappa,
    #[error("z{} is not a fixed puncture", .0 + 1)]
    NotAPuncture(usize),
    #[error("eigen-analysis is implemented for d <= 2, got d = {0}")]
    UnsupportedDimension(usize),
    #[error("expected {expected} points, got {got}")]
    PointCount { expected: usize, got: usize },
    #[error(transparent)]
    Lie(#[from] LieError),
}

// ---------------------------------------------------------------------------
// complex matrices

/// Dense complex matrix at a fixed binary precision.
#[derive(Clone, PartialEq)]
pub struct CMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigComplex>,
}

impl CMatrix {
    pub fn zeros(rows: usize, cols: usize, prec: u32) -> Self {
        CMatrix { rows, cols, data: vec![BigComplex::zero(prec); rows * cols] }
    }

    pub fn identity(n: usize, prec: u32) -> Self {
        let mut m = Self::zeros(n, n, prec);
        for i in 0..n {
            m[(i, i)] = BigComplex::one(prec);
        }
        m
    }

    pub fn from_rational(m: &Matrix<Rational>, prec: u32) -> Self {
        let mut out = Self::zeros(m.nrows(), m.ncols(), prec);
        for i in 0..m.nrows() {
            for j in 0..m.ncols() {
                out[(i, j)] = BigComplex::from_rational(&m[(i, j)], prec);
            }
        }
        out
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[Vec<BigComplex>]) -> Self {
        let rows = cols.first().map_or(0, |c| c.len());
        let prec = cols.first().and_then(|c| c.first()).map_or(DEFAULT_PRECISION, |x| x.prec());
        let mut m = Self::zeros(rows, cols.len(), prec);
        for (j, c) in cols.iter().enumerate() {
            for (i, x) in c.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    fn prec(&self) -> u32 {
        self.data.first().map_or(DEFAULT_PRECISION, |x| x.prec())
    }

    pub fn mul(&self, o: &CMatrix) -> CMatrix {
        assert_eq!(self.cols, o.rows, "dimension mismatch");
        let mut out = CMatrix::zeros(self.rows, o.cols, self.prec());
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let t = a * &o[(k, j)];
                    out[(i, j)] = &out[(i, j)] + &t;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigComplex]) -> Vec<BigComplex> {
        (0..self.rows)
            .map(|i| {
                (0..self.cols).fold(BigComplex::zero(self.prec()), |acc, j| acc + &self[(i, j)] * &v[j])
            })
            .collect()
    }

    pub fn add(&self, o: &CMatrix) -> CMatrix {
        self.zip(o, |a, b| a + b)
    }

    pub fn sub(&self, o: &CMatrix) -> CMatrix {
        self.zip(o, |a, b| a - b)
    }

    fn zip(&self, o: &CMatrix, f: impl Fn(&BigComplex, &BigComplex) -> BigComplex) -> CMatrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "dimension mismatch");
        CMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&o.data).map(|(a, b)| f(a, b)).collect() }
    }

    pub fn scale(&self, s: &BigComplex) -> CMatrix {
        CMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a * s).collect() }
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|x| x.abs_f64()).fold(0.0, f64::max)
    }

    /// `max |M − I|`.
    pub fn distance_from_identity(&self) -> f64 {
        self.sub(&CMatrix::identity(self.rows, self.prec())).max_abs()
    }

    pub fn trace(&self) -> BigComplex {
        (0..self.rows).fold(BigComplex::zero(self.prec()), |acc, i| acc + &self[(i, i)])
    }

    pub fn det(&self) -> BigComplex {
        let (lu, sign, singular) = self.lu();
        if singular {
            return BigComplex::zero(self.prec());
        }
        (0..self.rows).fold(BigComplex::from_f64(sign, 0.0, self.prec()), |acc, i| acc * &lu[(i, i)])
    }

    fn lu(&self) -> (CMatrix, f64, bool) {
        assert_eq!(self.rows, self.cols, "square matrix expected");
        let n = self.rows;
        let mut a = self.clone();
        let mut sign = 1.0;
        for c in 0..n {
            let p = (c..n).max_by(|&x, &y| a[(x, c)].abs().partial_cmp(&a[(y, c)].abs()).unwrap()).unwrap();
            if a[(p, c)].is_zero() {
                return (a, sign, true);
            }
            if p != c {
                for j in 0..n {
                    a.data.swap(p * n + j, c * n + j);
                }
                sign = -sign;
            }
            for r in c + 1..n {
                let f = &a[(r, c)] / &a[(c, c)];
                for j in c..n {
                    let t = &f * &a[(c, j)];
                    a[(r, j)] = &a[(r, j)] - &t;
                }
            }
        }
        (a, sign, false)
    }

    pub fn inverse(&self) -> Option<CMatrix> {
        let n = self.rows;
        let prec = self.prec();
        let mut a = self.clone();
        let mut inv = CMatrix::identity(n, prec);
        for c in 0..n {
            let p = (c..n).max_by(|&x, &y| a[(x, c)].abs().partial_cmp(&a[(y, c)].abs()).unwrap())?;
            if a[(p, c)].is_zero() {
                return None;
            }
            for j in 0..n {
                a.data.swap(p * n + j, c * n + j);
                inv.data.swap(p * n + j, c * n + j);
            }
            let piv = BigComplex::one(prec) / &a[(c, c)];
            for j in 0..n {
                a[(c, j)] = &a[(c, j)] * &piv;
                inv[(c, j)] = &inv[(c, j)] * &piv;
            }
            for r in 0..n {
                if r == c || a[(r, c)].is_zero() {
                    continue;
                }
                let f = a[(r, c)].clone();
                for j in 0..n {
                    let t = &f * &a[(c, j)];
                    a[(r, j)] = &a[(r, j)] - &t;
                    let t = &f * &inv[(c, j)];
                    inv[(r, j)] = &inv[(r, j)] - &t;
                }
            }
        }
        Some(inv)
    }

    /// Entries as `[re, im]` pairs, row by row.
    pub fn to_pairs(&self) -> Vec<Vec<[f64; 2]>> {
        (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| {
                        let (re, im) = self[(i, j)].to_f64();
                        [re, im]
                    })
                    .collect()
            })
            .collect()
    }
}

impl Index<(usize, usize)> for CMatrix {
    type Output = BigComplex;
    fn index(&self, (i, j): (usize, usize)) -> &BigComplex {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for CMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigComplex {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for CMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries((0..self.rows).map(|i| (0..self.cols).map(|j| self[(i, j)].clone()).collect::<Vec<_>>())).finish()
    }
}

pub fn pair(z: &BigComplex) -> [f64; 2] {
    let (re, im) = z.to_f64();
    [re, im]
}

fn vec_norm(v: &[BigComplex]) -> f64 {
    v.iter().map(|x| x.abs_f64().powi(2)).sum::<f64>().sqrt()
}

fn vec_norm_exact(v: &[BigComplex]) -> Float {
    let p = v.first().map_or(DEFAULT_PRECISION, |x| x.prec());
    v.iter().fold(Float::new(p), |acc, x| acc + x.norm_sqr()).sqrt()
}

/// Eigenvalues of a matrix of size at most 2.
pub fn eigenvalues(m: &CMatrix) -> Result<Vec<BigComplex>, KzError> {
    match m.nrows() {
        0 => Ok(vec![]),
        1 => Ok(vec![m[(0, 0)].clone()]),
        2 => {
            let p = m.prec();
            let half = BigComplex::from_f64(0.5, 0.0, p);
            let mean = &m.trace() * &half;
            let disc = (&mean * &mean - m.det()).sqrt();
            Ok(vec![&mean + &disc, &mean - &disc])
        }
        d => Err(KzError::UnsupportedDimension(d)),
    }
}

/// Condition number `‖V‖_F ‖V^{-1}‖_F` of a unit-column eigenvector matrix of a
/// matrix of size at most 2; `1` for scalar matrices (within `scalar_tol`) and
/// infinity when no eigenbasis exists.
pub fn eigenvector_condition(m: &CMatrix, scalar_tol: f64) -> Result<f64, KzError> {
    let d = m.nrows();
    if d > 2 {
        return Err(KzError::UnsupportedDimension(d));
    }
    if d < 2 {
        return Ok(1.0);
    }
    let p = m.prec();
    let half = BigComplex::from_f64(0.5, 0.0, p);
    let mean = &m.trace() * &half;
    let shifted = m.sub(&CMatrix::identity(2, p).scale(&mean));
    if shifted.max_abs() <= scalar_tol {
        return Ok(1.0);
    }
    let ev = eigenvalues(m)?;
    let cols: Vec<Vec<BigComplex>> = ev
        .iter()
        .map(|l| {
            // the larger of the two candidate kernel vectors of M − λ
            let a = vec![m[(0, 1)].clone(), l - &m[(0, 0)]];
            let b = vec![l - &m[(1, 1)], m[(1, 0)].clone()];
            let v = if vec_norm(&a) >= vec_norm(&b) { a } else { b };
            let n = BigComplex::from_f64(1.0 / vec_norm(&v), 0.0, p);
            v.iter().map(|x| x * &n).collect()
        })
        .collect();
    let v = CMatrix::from_columns(&cols);
    let det = v.det();
    if det.abs_f64() == 0.0 {
        return Ok(f64::INFINITY);
    }
    let inv = v.inverse().ok_or(KzError::PrecisionLoss("singular eigenvector matrix".into()))?;
    let fro = |x: &CMatrix| x.data.iter().map(|e| e.abs_f64().powi(2)).sum::<f64>().sqrt();
    Ok(fro(&v) * fro(&inv))
}

// ---------------------------------------------------------------------------
// the system

/// Casimir operators `Ω_{jk}` (`j < k`) induced on the coinvariant quotient,
/// in the basis chosen by [`coinvariants_quotient`].
pub fn casimir_matrices(rd: &RootData, ls: &[Weight]) -> Result<BTreeMap<(usize, usize), Matrix<Rational>>, KzError> {
    Ok(casimirs_on(&coinvariants_quotient(rd, ls)?))
}

fn casimirs_on(co: &Coinvariants) -> BTreeMap<(usize, usize), Matrix<Rational>> {
    let n = co.space.factors.len();
    let mut out = BTreeMap::new();
    for j in 0..n {
        for k in j + 1..n {
            out.insert((j, k), co.induced(&co.space.casimir(j, k)));
        }
    }
    out
}

#[derive(Clone, Debug)]
pub struct KzSystem {
    pub kappa: Rational,
    pub points: Vec<BigComplex>,
    pub coinvariants: Coinvariants,
    omegas: BTreeMap<(usize, usize), Matrix<Rational>>,
    prec: u32,
}

impl KzSystem {
    pub fn new(rd: &RootData, ls: &[Weight], points: Vec<BigComplex>, kappa: Rational) -> Result<Self, KzError> {
        if kappa.is_zero() {
            return Err(KzError::ZeroKappa);
        }
        if points.len() != ls.len() {
            return Err(KzError::PointCount { expected: ls.len(), got: points.len() });
        }
        check_distinct(&points)?;
        let coinvariants = coinvariants_quotient(rd, ls)?;
        let omegas = casimirs_on(&coinvariants);
        let prec = points.first().map_or(DEFAULT_PRECISION, |z| z.prec());
        Ok(KzSystem { kappa, points, coinvariants, omegas, prec })
    }

    /// sl2 with four copies of the standard representation at `(−1/2, 0, 1/2, 1)`.
    pub fn four_point(kappa: Rational, prec: u32) -> Result<Self, KzError> {
        let pts = [rat(-1, 2), rat(0, 1), rat(1, 2), rat(1, 1)].iter().map(|q| BigComplex::from_rational(q, prec)).collect();
        Self::new(&RootData::sl2(), &vec![Weight::omega(1, 0); 4], pts, kappa)
    }

    pub fn with_kappa(&self, kappa: Rational) -> Result<Self, KzError> {
        if kappa.is_zero() {
            return Err(KzError::ZeroKappa);
        }
        Ok(KzSystem { kappa, ..self.clone() })
    }

    pub fn num_points(&self) -> usize {
        self.points.len()
    }

    pub fn dim(&self) -> usize {
        self.coinvariants.dim()
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    /// `Ω_{jk} = Ω_{kj}`.
    pub fn omega(&self, j: usize, k: usize) -> &Matrix<Rational> {
        &self.omegas[&(j.min(k), j.max(k))]
    }

    pub fn omegas(&self) -> &BTreeMap<(usize, usize), Matrix<Rational>> {
        &self.omegas
    }
}

fn check_distinct(z: &[BigComplex]) -> Result<(), KzError> {
    for i in 0..z.len() {
        for j in i + 1..z.len() {
            if (&z[i] - &z[j]).is_zero() {
                return Err(KzError::CollidingPoints(i, j));
            }
        }
    }
    Ok(())
}

/// `−(1/κ) Σ_{k≠j} Ω_{jk}/(z_j − z_k)` at a rational configuration.
pub fn kz_rhs_exact(sys: &KzSystem, z: &[Rational], j: usize) -> Result<Matrix<Rational>, KzError> {
    let d = sys.dim();
    let mut acc = Matrix::<Rational>::zeros(d, d);
    for k in 0..z.len() {
        if k == j {
            continue;
        }
        let diff = &z[j] - &z[k];
        if diff.is_zero() {
            return Err(KzError::CollidingPoints(j.min(k), j.max(k)));
        }
        acc = acc.add(&sys.omega(j, k).scale(&(-Rational::one() / (&sys.kappa * diff))));
    }
    Ok(acc)
}

/// `−(1/κ) Σ_{k≠j} Ω_{jk}/(z_j − z_k)`.
pub fn kz_rhs(sys: &KzSystem, z: &[BigComplex], j: usize) -> Result<CMatrix, KzError> {
    let p = sys.prec;
    let d = sys.dim();
    let kappa = BigComplex::from_rational(&sys.kappa, p);
    let mut acc = CMatrix::zeros(d, d, p);
    for k in 0..z.len() {
        if k == j {
            continue;
        }
        let diff = &z[j] - &z[k];
        if diff.is_zero() {
            return Err(KzError::CollidingPoints(j.min(k), j.max(k)));
        }
        let c = -(BigComplex::one(p) / (&kappa * &diff));
        acc = acc.add(&CMatrix::from_rational(sys.omega(j, k), p).scale(&c));
    }
    Ok(acc)
}

/// `A_j`, the connection matrix in the direction `z_j`.
pub fn connection_matrix(sys: &KzSystem, z: &[BigComplex], j: usize) -> Result<CMatrix, KzError> {
    let r = kz_rhs(sys, z, j)?;
    Ok(r.scale(&BigComplex::from_f64(-1.0, 0.0, sys.prec)))
}

// ---------------------------------------------------------------------------
// paths and transport

/// Polygonal path of the moving point; the other points stay fixed.
#[derive(Clone, Debug)]
pub struct ContourPath {
    pub moving: usize,
    pub vertices: Vec<BigComplex>,
}

/// Shape of a simple loop: go up to `height`, across, down to `radius` above the
/// puncture, once around a regular polygon with `sides` sides, then back.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct LoopGeometry {
    pub height: f64,
    pub radius: f64,
    pub sides: usize,
}

impl Default for LoopGeometry {
    fn default() -> Self {
        LoopGeometry { height: 1.0, radius: 0.2, sides: 16 }
    }
}

impl ContourPath {
    pub fn new(moving: usize, vertices: Vec<BigComplex>) -> Self {
        ContourPath { moving, vertices }
    }

    pub fn constant(moving: usize, at: BigComplex) -> Self {
        ContourPath { moving, vertices: vec![at] }
    }

    pub fn start(&self) -> &BigComplex {
        &self.vertices[0]
    }

    pub fn end(&self) -> &BigComplex {
        self.vertices.last().expect("nonempty path")
    }

    pub fn is_closed(&self) -> bool {
        (self.start() - self.end()).is_zero()
    }

    pub fn reversed(&self) -> Self {
        ContourPath { moving: self.moving, vertices: self.vertices.iter().rev().cloned().collect() }
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &ContourPath) -> Self {
        assert!((self.end() - next.start()).is_zero(), "paths do not meet");
        let mut v = self.vertices.clone();
        v.extend(next.vertices.iter().skip(1).cloned());
        ContourPath { moving: self.moving, vertices: v }
    }

    /// Closed regular polygon around `center`, counterclockwise from angle `start`.
    pub fn circle(moving: usize, center: &BigComplex, radius: f64, sides: usize, start: f64) -> Self {
        let p = center.prec();
        let pi = BigComplex::pi(p);
        let r = Float::with_val(p, radius);
        let vertices = (0..=sides)
            .map(|s| {
                let theta = Float::with_val(p, start) + Float::with_val(p, &pi * 2u32) * (s % sides) as u32 / sides as u32;
                let (sin, cos) = theta.sin_cos(Float::new(p));
                center + &BigComplex::from_parts(Float::with_val(p, &r * &cos), Float::with_val(p, &r * &sin))
            })
            .collect();
        ContourPath { moving, vertices }
    }

    /// Counterclockwise simple loop from `base` around `puncture`.
    pub fn simple_loop(moving: usize, base: &BigComplex, puncture: &BigComplex, g: &LoopGeometry) -> Self {
        let p = base.prec();
        let up = base + &BigComplex::from_f64(0.0, g.height, p);
        let over = BigComplex::from_parts(puncture.re().clone(), Float::with_val(p, puncture.im() + g.height));
        let top = puncture + &BigComplex::from_f64(0.0, g.radius, p);
        let approach = ContourPath { moving, vertices: vec![base.clone(), up, over, top] };
        let circle = ContourPath::circle(moving, puncture, g.radius, g.sides, std::f64::consts::FRAC_PI_2);
        // the circle starts at angle π/2, i.e. exactly at `top` up to rounding
        let mut circle = circle;
        circle.vertices[0] = approach.end().clone();
        *circle.vertices.last_mut().unwrap() = approach.end().clone();
        approach.then(&circle).then(&approach.reversed())
    }

    /// `γ_p γ_q γ_p^{-1} γ_q^{-1}` for simple loops around the points `p` and `q`.
    pub fn pochhammer(moving: usize, base: &BigComplex, p: &BigComplex, q: &BigComplex, g: &LoopGeometry) -> Self {
        let gp = Self::simple_loop(moving, base, p, g);
        let gq = Self::simple_loop(moving, base, q, g);
        gp.then(&gq).then(&gp.reversed()).then(&gq.reversed())
    }

    /// Smallest distance from the path to `point`.
    pub fn distance_to(&self, point: &BigComplex) -> f64 {
        let pt = point.to_f64();
        if self.vertices.len() == 1 {
            return dist(self.vertices[0].to_f64(), pt);
        }
        self.vertices.windows(2).map(|w| segment_distance(w[0].to_f64(), w[1].to_f64(), pt)).fold(f64::INFINITY, f64::min)
    }
}

fn dist(a: (f64, f64), b: (f64, f64)) -> f64 {
    (a.0 - b.0).hypot(a.1 - b.1)
}

fn segment_distance(a: (f64, f64), b: (f64, f64), p: (f64, f64)) -> f64 {
    let (dx, dy) = (b.0 - a.0, b.1 - a.1);
    let len2 = dx * dx + dy * dy;
    if len2 == 0.0 {
        return dist(a, p);
    }
    let t = (((p.0 - a.0) * dx + (p.1 - a.1) * dy) / len2).clamp(0.0, 1.0);
    dist((a.0 + t * dx, a.1 + t * dy), p)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TransportOptions {
    /// Bound on the local error per accepted step.
    pub tol: f64,
    pub keep_out: f64,
    pub max_order: usize,
}

impl Default for TransportOptions {
    fn default() -> Self {
        TransportOptions { tol: 1e-24, keep_out: 1e-2, max_order: 400 }
    }
}

struct Poles {
    points: Vec<BigComplex>,
    residues: Vec<CMatrix>,
}

impl Poles {
    fn of(sys: &KzSystem, moving: usize) -> Self {
        let p = sys.prec;
        let inv_kappa = BigComplex::from_rational(&(-Rational::one() / &sys.kappa), p);
        let mut points = Vec::new();
        let mut residues = Vec::new();
        for k in 0..sys.num_points() {
            if k != moving {
                points.push(sys.points[k].clone());
                residues.push(CMatrix::from_rational(sys.omega(moving, k), p).scale(&inv_kappa));
            }
        }
        Poles { points, residues }
    }

    fn nearest(&self, z: &BigComplex) -> f64 {
        self.points.iter().map(|p| (z - p).abs_f64()).fold(f64::INFINITY, f64::min)
    }

    /// Propagator `z0 → z0 + h` from the Taylor expansion of the solution at `z0`.
    fn taylor(&self, z0: &BigComplex, h: &BigComplex, d: usize, cutoff: f64, max_order: usize) -> Option<CMatrix> {
        let prec = z0.prec();
        // β_m = B_m h^{m+1} = −Σ_k C_k (−h/(z0 − p_k))^{m+1}
        let ratios: Vec<BigComplex> = self.points.iter().map(|p| -(h / &(z0 - p))).collect();
        let mut powers = ratios.clone();
        let mut betas: Vec<CMatrix> = Vec::new();
        let mut terms = vec![CMatrix::identity(d, prec)];
        let mut sum = CMatrix::identity(d, prec);
        let mut small = 0;
        for n in 0..max_order {
            let mut beta = CMatrix::zeros(d, d, prec);
            for (c, pw) in self.residues.iter().zip(&powers) {
                beta = beta.sub(&c.scale(pw));
            }
            betas.push(beta);
            for (pw, r) in powers.iter_mut().zip(&ratios) {
                *pw = &*pw * r;
            }
            let mut next = CMatrix::zeros(d, d, prec);
            for m in 0..=n {
                next = next.add(&betas[m].mul(&terms[n - m]));
            }
            let inv = Float::with_val(prec, 1) / (n as u32 + 1);
            let next = CMatrix { rows: d, cols: d, data: next.data.iter().map(|x| x.scale(&inv)).collect() };
            let size = next.max_abs();
            sum = sum.add(&next);
            terms.push(next);
            small = if size <= cutoff * sum.max_abs().max(1.0) { small + 1 } else { 0 };
            if small >= 3 {
                return Some(sum);
            }
        }
        None
    }
}

/// Fundamental solution along `path`: the matrix `T` with `u(end) = T u(start)`
/// for every horizontal section `u`.
pub fn transport(sys: &KzSystem, path: &ContourPath, opts: &TransportOptions) -> Result<CMatrix, KzError> {
    let poles = Poles::of(sys, path.moving);
    for (k, p) in sys.points.iter().enumerate() {
        if k == path.moving {
            continue;
        }
        let distance = path.distance_to(p);
        if distance < opts.keep_out {
            return Err(KzError::PathTooClose { puncture: k, distance, keep_out: opts.keep_out });
        }
    }
    let d = sys.dim();
    let mut u = CMatrix::identity(d, sys.prec);
    for w in path.vertices.windows(2) {
        u = transport_segment(&poles, &w[0], &w[1], d, opts)?.mul(&u);
    }
    Ok(u)
}

fn transport_segment(poles: &Poles, a: &BigComplex, b: &BigComplex, d: usize, opts: &TransportOptions) -> Result<CMatrix, KzError> {
    let prec = a.prec();
    let mut u = CMatrix::identity(d, prec);
    let mut z = a.clone();
    let half = BigComplex::from_f64(0.5, 0.0, prec);
    let cutoff = opts.tol * 1e-6;
    let mut fraction = 0.25;
    loop {
        let rem = b - &z;
        let rem_len = rem.abs_f64();
        if rem_len == 0.0 {
            return Ok(u);
        }
        let rho = poles.nearest(&z);
        let mut len = (rho * fraction).min(rem_len);
        loop {
            if len < 1e-15 * rho.max(1e-300) || len == 0.0 {
                return Err(KzError::StepUnderflow { at: format!("{:?}", z) });
            }
            let last = len >= rem_len;
            let h = if last { rem.clone() } else { rem.scale(&Float::with_val(prec, len / rem_len)) };
            let hh = &h * &half;
            let mid = &z + &hh;
            let step = poles.taylor(&z, &h, d, cutoff, opts.max_order).and_then(|full| {
                let first = poles.taylor(&z, &hh, d, cutoff, opts.max_order)?;
                let second = poles.taylor(&mid, &hh, d, cutoff, opts.max_order)?;
                let fine = second.mul(&first);
                let err = full.sub(&fine).max_abs();
                (err <= opts.tol * fine.max_abs().max(1.0)).then_some(fine)
            });
            match step {
                Some(fine) => {
                    u = fine.mul(&u);
                    z = if last { b.clone() } else { &z + &h };
                    fraction = (fraction * 2.0).min(0.25);
                    break;
                }
                None => {
                    fraction /= 2.0;
                    len /= 2.0;
                }
            }
        }
    }
}

/// Monodromy along `γ_p γ_q γ_p^{-1} γ_q^{-1}` with point 0 moving from `base`.
pub fn pochhammer_monodromy(
    sys: &KzSystem,
    p: usize,
    q: usize,
    base: &BigComplex,
    opts: &TransportOptions,
    geometry: &LoopGeometry,
) -> Result<CMatrix, KzError> {
    for &x in &[p, q] {
        if x == 0 || x >= sys.num_points() {
            return Err(KzError::NotAPuncture(x));
        }
    }
    let path = ContourPath::pochhammer(0, base, &sys.points[p], &sys.points[q], geometry);
    transport(sys, &path, opts)
}

/// Monodromy of the simple loop around point `p`, with point 0 moving from `base`.
pub fn loop_monodromy(
    sys: &KzSystem,
    p: usize,
    base: &BigComplex,
    opts: &TransportOptions,
    geometry: &LoopGeometry,
) -> Result<CMatrix, KzError> {
    if p == 0 || p >= sys.num_points() {
        return Err(KzError::NotAPuncture(p));
    }
    transport(sys, &ContourPath::simple_loop(0, base, &sys.points[p], geometry), opts)
}

// ---------------------------------------------------------------------------
// explicit sections

/// `coeff · Π (z_a − z_b)` over the listed pairs.
#[derive(Clone, Debug, PartialEq)]
pub struct Term {
    pub coeff: Rational,
    pub factors: Vec<(usize, usize)>,
}

/// `Π (z_a − z_b)^{e_ab} · (c_1(z), …, c_d(z))` with polynomial components.
#[derive(Clone, Debug, PartialEq)]
pub struct ProductSection {
    pub prefactor: Vec<((usize, usize), Rational)>,
    pub components: Vec<Vec<Term>>,
}

fn all_pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect()
}

impl ProductSection {
    /// `Π_{i<j} (z_i − z_j)^e · ((z1 − z3)(z2 − z4), (z1 − z2)(z3 − z4))`.
    pub fn phi_tilde(exponent: Rational) -> Self {
        ProductSection {
            prefactor: all_pairs(4).into_iter().map(|p| (p, exponent.clone())).collect(),
            components: vec![
                vec![Term { coeff: Rational::one(), factors: vec![(0, 2), (1, 3)] }],
                vec![Term { coeff: Rational::one(), factors: vec![(0, 1), (2, 3)] }],
            ],
        }
    }

    /// `f · [v]` with `f = (z1−z2)^{-1/2}(z1−z3)^{1/2}(z1−z4)^{1/2}(z2−z3)^{1/2}(z2−z4)^{1/2}(z3−z4)^{-1/2}`.
    pub fn f_v() -> Self {
        let h = rat(1, 2);
        let e = [-&h, h.clone(), h.clone(), h.clone(), h.clone(), -&h];
        ProductSection {
            prefactor: all_pairs(4).into_iter().zip(e).collect(),
            components: vec![vec![Term { coeff: Rational::one(), factors: vec![] }], vec![]],
        }
    }

    fn scalar(&self, z: &[BigComplex]) -> Result<BigComplex, KzError> {
        let p = z[0].prec();
        let mut acc = BigComplex::one(p);
        for ((a, b), e) in &self.prefactor {
            let diff = &z[*a] - &z[*b];
            if diff.im().is_zero() && diff.re().is_sign_negative() {
                return Err(KzError::BranchCut(*a, *b));
            }
            acc = acc * diff.pow_rational(e);
        }
        Ok(acc)
    }

    fn polys(&self, z: &[BigComplex], j: Option<usize>) -> Vec<BigComplex> {
        let p = z[0].prec();
        self.components
            .iter()
            .map(|terms| {
                terms.iter().fold(BigComplex::zero(p), |acc, t| {
                    let c = BigComplex::from_rational(&t.coeff, p);
                    let diffs: Vec<BigComplex> = t.factors.iter().map(|(a, b)| &z[*a] - &z[*b]).collect();
                    let val = match j {
                        None => diffs.iter().fold(BigComplex::one(p), |x, y| x * y),
                        Some(j) => (0..diffs.len()).fold(BigComplex::zero(p), |x, s| {
                            let (a, b) = t.factors[s];
                            let sign = (a == j) as i32 - (b == j) as i32;
                            if sign == 0 {
                                return x;
                            }
                            let rest = diffs.iter().enumerate().filter(|(r, _)| *r != s).fold(BigComplex::one(p), |y, (_, w)| y * w);
                            x + rest * BigComplex::from_f64(sign as f64, 0.0, p)
                        }),
                    };
                    acc + c * val
                })
            })
            .collect()
    }

    pub fn value(&self, z: &[BigComplex]) -> Result<Vec<BigComplex>, KzError> {
        let s = self.scalar(z)?;
        Ok(self.polys(z, None).into_iter().map(|c| c * &s).collect())
    }

    /// `∂/∂z_j` by the product rule.
    pub fn derivative(&self, z: &[BigComplex], j: usize) -> Result<Vec<BigComplex>, KzError> {
        let p = z[0].prec();
        let s = self.scalar(z)?;
        let mut logd = BigComplex::zero(p);
        for ((a, b), e) in &self.prefactor {
            let sign = (*a == j) as i32 - (*b == j) as i32;
            if sign != 0 {
                let diff = &z[*a] - &z[*b];
                logd = logd + BigComplex::from_rational(&(e * Rational::from_integer(sign.into())), p) / diff;
            }
        }
        let vals = self.polys(z, None);
        let ders = self.polys(z, Some(j));
        Ok(vals.iter().zip(ders).map(|(v, dv)| (dv + v * &logd) * &s).collect())
    }
}

/// Orthonormal basis of the span of `vectors`, dropping directions below `eps`.
fn orthonormalize(vectors: &[Vec<BigComplex>], eps: f64) -> Vec<Vec<BigComplex>> {
    let mut basis: Vec<Vec<BigComplex>> = Vec::new();
    for v in vectors {
        let scale = vec_norm(v);
        let w = project_out(v, &basis);
        let n = vec_norm(&w);
        if n > eps * scale.max(1.0) {
            let inv = Float::with_val(w[0].prec(), 1) / vec_norm_exact(&w);
            basis.push(w.iter().map(|x| x.scale(&inv)).collect());
        }
    }
    basis
}

fn project_out(v: &[BigComplex], basis: &[Vec<BigComplex>]) -> Vec<BigComplex> {
    let mut w = v.to_vec();
    for b in basis {
        let p = v[0].prec();
        let c = b.iter().zip(&w).fold(BigComplex::zero(p), |acc, (x, y)| acc + &x.conj() * y);
        for (wi, bi) in w.iter_mut().zip(b) {
            *wi = &*wi - &(&c * bi);
        }
    }
    w
}

/// Kernel of the map from coinvariants to level-`level` conformal blocks at
/// the complex configuration `z`: the classes of `(Σ z_i e^{(i)})^{level+1} V`.
pub fn conformal_kernel(sys: &KzSystem, z: &[BigComplex], level: u64) -> Result<Vec<Vec<BigComplex>>, KzError> {
    if z.len() != sys.num_points() {
        return Err(KzError::PointCount { expected: sys.num_points(), got: z.len() });
    }
    let p = sys.prec;
    let space = &sys.coinvariants.space;
    let n = space.dim();
    let mut t = CMatrix::zeros(n, n, p);
    for (i, zi) in z.iter().enumerate() {
        t = t.add(&CMatrix::from_rational(&space.ops_matrix(&[(i, Gen::E)]), p).scale(zi));
    }
    let mut tp = CMatrix::identity(n, p);
    for _ in 0..=level {
        tp = t.mul(&tp);
    }
    let img = CMatrix::from_rational(&sys.coinvariants.projection, p).mul(&tp);
    let cols: Vec<Vec<BigComplex>> = (0..n).map(|c| (0..img.nrows()).map(|r| img[(r, c)].clone()).collect()).collect();
    let eps = BigComplex::epsilon(p, p as i32 / 2).to_f64();
    Ok(orthonormalize(&cols, eps))
}

/// `max_j ‖∂_j s + A_j s‖` at `z`, measured modulo the span of `quotient`.
pub fn flat_section_residual(
    sys: &KzSystem,
    section: &ProductSection,
    z: &[BigComplex],
    quotient: &[Vec<BigComplex>],
) -> Result<f64, KzError> {
    check_distinct(z)?;
    let s = section.value(z)?;
    let eps = BigComplex::epsilon(sys.prec, sys.prec as i32 / 2).to_f64();
    let q = orthonormalize(quotient, eps);
    let mut worst: f64 = 0.0;
    for j in 0..z.len() {
        let ds = section.derivative(z, j)?;
        let a = connection_matrix(sys, z, j)?.mul_vec(&s);
        let x: Vec<BigComplex> = ds.iter().zip(&a).map(|(u, v)| u + v).collect();
        worst = worst.max(vec_norm(&project_out(&x, &q)));
    }
    Ok(worst)
}

/// `Φ(z) = ((z1 − z3)(z2 − z4), (z1 − z2)(z3 − z4))`.
pub fn four_point_phi(z: &[BigComplex]) -> Vec<BigComplex> {
    vec![(&z[0] - &z[2]) * (&z[1] - &z[3]), (&z[0] - &z[1]) * (&z[2] - &z[3])]
}

/// Random configuration near `(−1/2, 0, 1/2, 1)` with offsets of size below `spread`.
pub fn sample_configuration(rng: &mut ChaCha8Rng, spread: f64, prec: u32) -> Vec<BigComplex> {
    [-0.5, 0.0, 0.5, 1.0]
        .iter()
        .map(|&x| BigComplex::from_f64(x + rng.gen_range(-spread..spread), rng.gen_range(-spread..spread), prec))
        .collect()
}

// ---------------------------------------------------------------------------
// curvature

/// `max ‖F_ij v‖` over the given vectors, `F_ij = ∂_i A_j − ∂_j A_i + [A_i, A_j]`,
/// with central differences of step `step`.
pub fn curvature_norm(sys: &KzSystem, z: &[BigComplex], i: usize, j: usize, vectors: &[Vec<BigComplex>], step: &BigComplex) -> Result<f64, KzError> {
    let p = sys.prec;
    let shifted = |k: usize, sign: f64| {
        let mut w = z.to_vec();
        w[k] = &w[k] + &step.scale(&Float::with_val(p, sign));
        w
    };
    let inv2h = BigComplex::one(p) / (step * &BigComplex::from_f64(2.0, 0.0, p));
    let deriv = |k: usize, a: usize| -> Result<CMatrix, KzError> {
        let plus = connection_matrix(sys, &shifted(k, 1.0), a)?;
        let minus = connection_matrix(sys, &shifted(k, -1.0), a)?;
        Ok(plus.sub(&minus).scale(&inv2h))
    };
    let ai = connection_matrix(sys, z, i)?;
    let aj = connection_matrix(sys, z, j)?;
    let f = deriv(i, j)?.sub(&deriv(j, i)?).add(&ai.mul(&aj)).sub(&aj.mul(&ai));
    Ok(vectors.iter().map(|v| vec_norm(&f.mul_vec(v))).fold(0.0, f64::max))
}

/// Largest curvature over `num_points` random configurations, all pairs, and
/// `num_vectors` random vectors, with difference step `10^{-12}`.
pub fn curvature_check(sys: &KzSystem, num_points: usize, num_vectors: usize, seed: u64) -> Result<f64, KzError> {
    let p = sys.prec;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let step = BigComplex::from_rational(&Rational::new(1.into(), num_bigint::BigInt::from(10u64).pow(12)), p);
    let n = sys.num_points();
    let mut worst: f64 = 0.0;
    for _ in 0..num_points {
        let z: Vec<BigComplex> = (0..n).map(|_| BigComplex::from_f64(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0), p)).collect();
        let vectors: Vec<Vec<BigComplex>> = (0..num_vectors)
            .map(|_| (0..sys.dim()).map(|_| BigComplex::from_f64(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), p)).collect())
            .collect();
        for i in 0..n {
            for j in i + 1..n {
                worst = worst.max(curvature_norm(sys, &z, i, j, &vectors, &step)?);
            }
        }
    }
    Ok(worst)
}

// ---------------------------------------------------------------------------
// reports

/// Pochhammer monodromy in the basis `([v], Φ(base))`.
#[derive(Clone, Debug, Serialize)]
pub struct MonodromyReport {
    pub kappa: String,
    pub loop_points: [usize; 2],
    pub base: [f64; 2],
    pub matrix: Vec<Vec<[f64; 2]>>,
    pub eigenvalues: Vec<[f64; 2]>,
    pub unipotence_residual: f64,
    pub distance_from_identity: f64,
    pub det_residual: f64,
    pub adapted_matrix: Vec<Vec<[f64; 2]>>,
    pub a21: [f64; 2],
    pub a21_abs: f64,
}

/// Change of basis to `([v], Φ(base))` for the four-point system.
pub fn adapted_basis(sys: &KzSystem, base: &BigComplex) -> CMatrix {
    let p = sys.prec;
    let mut z = sys.points.clone();
    z[0] = base.clone();
    let phi = four_point_phi(&z);
    CMatrix::from_columns(&[vec![BigComplex::one(p), BigComplex::zero(p)], phi])
}

pub fn monodromy_report(
    sys: &KzSystem,
    p: usize,
    q: usize,
    base: &BigComplex,
    opts: &TransportOptions,
    geometry: &LoopGeometry,
) -> Result<MonodromyReport, KzError> {
    let m = pochhammer_monodromy(sys, p, q, base, opts, geometry)?;
    let ev = eigenvalues(&m)?;
    let one = BigComplex::one(sys.prec);
    let unipotence_residual = ev.iter().map(|l| (l - &one).abs_f64()).fold(0.0, f64::max);
    let (adapted, a21) = if sys.num_points() == 4 && sys.dim() == 2 {
        let b = adapted_basis(sys, base);
        let inv = b.inverse().ok_or(KzError::PrecisionLoss("degenerate adapted basis".into()))?;
        let a = inv.mul(&m).mul(&b);
        let a21 = a[(1, 0)].clone();
        (a.to_pairs(), a21)
    } else {
        (vec![], BigComplex::zero(sys.prec))
    };
    Ok(MonodromyReport {
        kappa: format_rational(&sys.kappa),
        loop_points: [p + 1, q + 1],
        base: pair(base),
        matrix: m.to_pairs(),
        eigenvalues: ev.iter().map(pair).collect(),
        unipotence_residual,
        distance_from_identity: m.distance_from_identity(),
        det_residual: (m.det() - one).abs_f64(),
        adapted_matrix: adapted,
        a21: pair(&a21),
        a21_abs: a21.abs_f64(),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct GeneratorReport {
    pub point: usize,
    pub matrix: Vec<Vec<[f64; 2]>>,
    pub eigenvalues: Vec<[f64; 2]>,
    pub eigenvector_condition: f64,
}

/// Simple-loop monodromies around every fixed point, with eigenvector
/// condition numbers.
pub fn generator_reports(
    sys: &KzSystem,
    base: &BigComplex,
    opts: &TransportOptions,
    geometry: &LoopGeometry,
) -> Result<Vec<GeneratorReport>, KzError> {
    let one = |k: usize| -> Result<GeneratorReport, KzError> {
        let m = loop_monodromy(sys, k, base, opts, geometry)?;
        Ok(GeneratorReport {
            point: k + 1,
            matrix: m.to_pairs(),
            eigenvalues: eigenvalues(&m)?.iter().map(pair).collect(),
            eigenvector_condition: eigenvector_condition(&m, opts.tol.sqrt())?,
        })
    };
    std::thread::scope(|scope| {
        let handles: Vec<_> = (1..sys.num_points()).map(|k| scope.spawn(move || one(k))).collect();
        handles.into_iter().map(|h| h.join().expect("transport thread panicked")).collect()
    })
}

// ---------------------------------------------------------------------------
// Gauss hypergeometric function

/// Nodes and weights of the `n`-point Gauss–Legendre rule on `[-1, 1]`, ascending.
pub fn gauss_legendre(n: usize, prec: u32) -> Vec<(Float, Float)> {
    let work = prec + 32;
    let pi = BigComplex::pi(work);
    let tol = BigComplex::epsilon(work, prec as i32);
    let mut out = Vec::with_capacity(n);
    for i in 1..=n {
        let guess = Float::with_val(work, &pi * (4 * i - 1) as u32) / (4 * n + 2) as u32;
        let mut x = guess.cos();
        let mut dp = Float::new(work);
        for _ in 0..100 {
            // P_n(x) and P_n'(x) by the three-term recurrence
            let mut p0 = Float::with_val(work, 1);
            let mut p1 = x.clone();
            for k in 2..=n {
                let p2 = (Float::with_val(work, &x * &p1) * (2 * k - 1) as u32 - Float::with_val(work, &p0 * (k - 1) as u32)) / k as u32;
                p0 = p1;
                p1 = p2;
            }
            let x2 = Float::with_val(work, &x * &x);
            dp = Float::with_val(work, Float::with_val(work, &x * &p1) - &p0) * n as u32 / (x2 - 1u32);
            let dx = Float::with_val(work, &p1 / &dp);
            x -= &dx;
            if dx.abs() < tol {
                break;
            }
        }
        let x2 = Float::with_val(work, &x * &x);
        let w = Float::with_val(work, 2) / (Float::with_val(work, 1 - x2) * Float::with_val(work, &dp * &dp));
        out.push((Float::with_val(prec, x), Float::with_val(prec, w)));
    }
    out.reverse();
    out
}

enum Piece {
    Segment(BigComplex, BigComplex),
    Arc { center: BigComplex, radius: Float, from: Float, to: Float },
}

impl Piece {
    /// Point and derivative at parameter `s ∈ [0, 1]`.
    fn at(&self, s: &Float) -> (BigComplex, BigComplex) {
        match self {
            Piece::Segment(a, b) => {
                let d = b - a;
                (a + &d.scale(s), d)
            }
            Piece::Arc { center, radius, from, to } => {
                let p = center.prec();
                let span = Float::with_val(p, to - from);
                let theta = Float::with_val(p, from + Float::with_val(p, &span * s));
                let (sin, cos) = theta.sin_cos(Float::new(p));
                let e = BigComplex::from_parts(cos, sin);
                let pt = center + &e.scale(radius);
                let d = (&e * &BigComplex::i(p)).scale(&Float::with_val(p, radius * &span));
                (pt, d)
            }
        }
    }

    fn distance_to(&self, t: (f64, f64)) -> f64 {
        match self {
            Piece::Segment(a, b) => segment_distance(a.to_f64(), b.to_f64(), t),
            Piece::Arc { center, radius, .. } => (dist(center.to_f64(), t) - radius.to_f64()).abs(),
        }
    }
}

/// The Pochhammer contour `(0+, 1+, 0−, 1−)` from `1/2 + i/4`, each loop a
/// circle of radius `1/5`, cut into pieces for quadrature.
fn pochhammer_pieces(prec: u32) -> Vec<Piece> {
    let base = BigComplex::from_rationals(&rat(1, 2), &rat(1, 4), prec);
    let radius = Float::with_val(prec, 0.2);
    let half_pi = Float::with_val(prec, BigComplex::pi(prec) / 2u32);
    let two_pi = Float::with_val(prec, BigComplex::pi(prec) * 2u32);
    let mut pieces = Vec::new();
    let segment = |pieces: &mut Vec<Piece>, a: &BigComplex, b: &BigComplex| {
        let n = ((b - a).abs_f64() / 0.05).ceil().max(1.0) as u32;
        for s in 0..n {
            let t0 = Float::with_val(prec, s) / n;
            let t1 = Float::with_val(prec, s + 1) / n;
            let d = b - a;
            pieces.push(Piece::Segment(a + &d.scale(&t0), a + &d.scale(&t1)));
        }
    };
    for (c, dir) in [(0, 1i32), (1, 1), (0, -1), (1, -1)] {
        let center = BigComplex::from_f64(c as f64, 0.0, prec);
        let top = &center + &BigComplex::from_parts(Float::new(prec), radius.clone());
        segment(&mut pieces, &base, &top);
        let arcs = 16;
        for s in 0..arcs {
            let from = Float::with_val(prec, &half_pi + Float::with_val(prec, &two_pi * dir) * s / arcs);
            let to = Float::with_val(prec, &half_pi + Float::with_val(prec, &two_pi * dir) * (s + 1) / arcs);
            pieces.push(Piece::Arc { center: center.clone(), radius: radius.clone(), from, to });
        }
        segment(&mut pieces, &top, &base);
    }
    pieces
}

fn unwrap_log(z: &BigComplex, prev: &BigComplex) -> BigComplex {
    let p = z.prec();
    let l = z.ln();
    let two_pi = Float::with_val(p, BigComplex::pi(p) * 2u32);
    let turns = Float::with_val(p, prev.im() - l.im()) / &two_pi;
    let k = turns.round();
    &l + &BigComplex::from_parts(Float::new(p), Float::with_val(p, &k * &two_pi))
}

fn contour_integral(pieces: &[Piece], nodes: &[(Float, Float)], a: &Rational, b: &Rational, c: &Rational, u: &BigComplex) -> (BigComplex, f64) {
    let p = u.prec();
    let one = BigComplex::one(p);
    let start = pieces[0].at(&Float::new(p)).0;
    let factors = |t: &BigComplex| [t.clone(), &one - t, &one - &(t * u)];
    let mut logs: Vec<BigComplex> = factors(&start).iter().map(|f| f.ln()).collect();
    let exps = [
        BigComplex::from_rational(&(b - Rational::one()), p),
        BigComplex::from_rational(&(c - b - Rational::one()), p),
        BigComplex::from_rational(&(-a), p),
    ];
    let half = Float::with_val(p, 0.5);
    let mut total = BigComplex::zero(p);
    let mut mass = 0.0;
    for piece in pieces {
        for (x, w) in nodes {
            let s = Float::with_val(p, Float::with_val(p, x + 1u32) * &half);
            let (t, dt) = piece.at(&s);
            let f = factors(&t);
            for (l, fk) in logs.iter_mut().zip(&f) {
                *l = unwrap_log(fk, l);
            }
            let expo = logs.iter().zip(&exps).fold(BigComplex::zero(p), |acc, (l, e)| acc + l * e);
            let val = expo.exp() * dt.scale(&Float::with_val(p, w * &half));
            mass += val.abs_f64();
            total = total + val;
        }
    }
    (total, mass)
}

fn is_integer(q: &Rational) -> bool {
    q.is_integer()
}

/// `₂F₁(a, b; c; u)` from the Euler integral over the Pochhammer contour around
/// `0` and `1`:
/// `−Γ(c)/(Γ(b)Γ(c−b)) · ∫ t^{b−1}(1−t)^{c−b−1}(1−tu)^{−a} dt / ((1−e^{2πib})(1−e^{2πi(c−b)}))`,
/// with principal branches at the start `1/2 + i/4` continued along the contour.
/// For `1/u` below the real axis or outside the contour this is the principal
/// branch; at real `u > 1` it is the limit from the upper half-plane.
pub fn hyp2f1(a: &Rational, b: &Rational, c: &Rational, u: &BigComplex, prec: u32) -> Result<BigComplex, KzError> {
    let cb = c - b;
    if is_integer(b) || is_integer(&cb) {
        return Err(KzError::ResonantParameters(format!("b = {}, c - b = {}", format_rational(b), format_rational(&cb))));
    }
    if is_integer(c) && !c.is_positive() {
        return Err(KzError::ResonantParameters(format!("c = {}", format_rational(c))));
    }
    let work = prec + 32;
    let u = BigComplex::from_parts(Float::with_val(work, u.re()), Float::with_val(work, u.im()));
    let pieces = pochhammer_pieces(work);
    if !u.is_zero() {
        let pole = (BigComplex::one(work) / &u).to_f64();
        let distance = pieces.iter().map(|q| q.distance_to(pole)).fold(f64::INFINITY, f64::min);
        if distance < 1e-2 {
            return Err(KzError::PathTooClose { puncture: 0, distance, keep_out: 1e-2 });
        }
    }
    let (coarse, _) = contour_integral(&pieces, &gauss_legendre(24, work), a, b, c, &u);
    let (fine, mass) = contour_integral(&pieces, &gauss_legendre(32, work), a, b, c, &u);
    let target = BigComplex::epsilon(work, prec as i32 / 3).to_f64();
    let scale = fine.abs_f64().max(1e-300);
    if (&fine - &coarse).abs_f64() > target * scale {
        return Err(KzError::PrecisionLoss(format!("quadrature did not settle: {:e}", (&fine - &coarse).abs_f64() / scale)));
    }
    if scale < mass * BigComplex::epsilon(work, prec as i32 / 2).to_f64() {
        return Err(KzError::PrecisionLoss("contour integral cancels to working precision".into()));
    }
    let gamma = |q: &Rational| Float::with_val(work, Float::with_val(work, BigComplex::from_rational(q, work).re()).gamma_ref());
    let norm = Float::with_val(work, gamma(c) / Float::with_val(work, gamma(b) * gamma(&cb)));
    let one = BigComplex::one(work);
    let two_pi_i = BigComplex::from_parts(Float::new(work), Float::with_val(work, BigComplex::pi(work) * 2u32));
    let phase = |q: &Rational| &one - &(&two_pi_i * &BigComplex::from_rational(q, work)).exp();
    let value = -(fine / (phase(b) * phase(&cb))).scale(&norm);
    Ok(BigComplex::from_parts(Float::with_val(prec, value.re()), Float::with_val(prec, value.im())))
}

/// `Σ (a)_n (b)_n / ((c)_n n!) u^n` for `|u| < 1`.
pub fn hyp2f1_series(a: &Rational, b: &Rational, c: &Rational, u: &BigComplex, prec: u32) -> Result<BigComplex, KzError> {
    if is_integer(c) && !c.is_positive() {
        return Err(KzError::ResonantParameters(format!("c = {}", format_rational(c))));
    }
    let r = u.abs_f64();
    if r >= 1.0 {
        return Err(KzError::PrecisionLoss(format!("series needs |u| < 1, got {r}")));
    }
    let work = prec + 32;
    let u = BigComplex::from_parts(Float::with_val(work, u.re()), Float::with_val(work, u.im()));
    let eps = BigComplex::epsilon(work, prec as i32 + 8).to_f64();
    let mut coeff = Rational::one();
    let mut sum = BigComplex::one(work);
    let mut upow = BigComplex::one(work);
    for n in 0..1_000_000u64 {
        let nn = Rational::from_integer(n.into());
        coeff = coeff * (a + &nn) * (b + &nn) / ((c + &nn) * (&nn + Rational::one()));
        upow = upow * &u;
        if coeff.is_zero() {
            break;
        }
        let term = upow.scale(&BigComplex::from_rational(&coeff, work).re().clone());
        sum = sum + &term;
        // the tail is bounded once the term ratio has settled below 1
        let bound = term.abs_f64() / (1.0 - r).max(1e-300);
        if n > 8 && bound < eps * sum.abs_f64().max(1e-300) {
            break;
        }
    }
    if coeff.abs().to_f64().map_or(true, |x| !x.is_finite()) && !coeff.is_zero() {
        return Err(KzError::PrecisionLoss("series coefficients overflow".into()));
    }
    Ok(BigComplex::from_parts(Float::with_val(prec, sum.re()), Float::with_val(prec, sum.im())))
}
