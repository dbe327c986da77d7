//! Job configuration, command dispatch and JSON reports for the `aomoto-lab`
//! binary.
//!
//! A job is a single JSON document. Rationals are written as `"p/q"` strings
//! (plain JSON integers are accepted too). Every report carries
//! `"schema": "1"`, the command name, the configuration with all defaults
//! filled in, and the seed.

use std::fmt;

use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

use crate::aomoto::{chi_projector, shapovalov_image, subsets, AomotoComplex};
use crate::arrangement::{
    color_group, intersection_lattice, os_dimension, AffineForm, IntersectionLattice, WeightedArrangement,
};
use crate::exactfield::{format_rational, parse_rational, rat, rational_serde, BigComplex, Rational};
use crate::kz::{
    conformal_kernel, curvature_check, flat_section_residual, generator_reports, hyp2f1, hyp2f1_series,
    monodromy_report, sample_configuration, KzSystem, LoopGeometry, ProductSection, TransportOptions,
};
use crate::liealg::{
    conformal_block_dim, coinvariants_quotient, invariants_dim, CartanType, RootData, TensorSpace, Weight, WeightBasis,
};
use crate::logforms::{verify_grundlegend, verify_grundlegend_pair, DiagonalFormSpec};
use crate::svmap::{build_arrangement, egregium_check, omega_sv, restrict_to_zero_weight, RepArrangementInput};

pub const SCHEMA_VERSION: &str = "1";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("config error at {pointer}: {message}")]
    Config { pointer: String, message: String },
    #[error("{command}: {message}")]
    Domain { command: String, message: String },
    #[error("i/o error on {path}: {message}")]
    Io { path: String, message: String },
}

impl CliError {
    /// 1 for domain errors, 2 for configuration and input errors.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Domain { .. } => 1,
            CliError::Config { .. } | CliError::Io { .. } => 2,
        }
    }

    fn config(pointer: &str, message: impl fmt::Display) -> Self {
        CliError::Config { pointer: pointer.to_string(), message: message.to_string() }
    }
}

fn domain(command: Command) -> impl Fn(&dyn fmt::Display) -> CliError {
    move |e| CliError::Domain { command: command.to_string(), message: e.to_string() }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Command {
    Lattice,
    Aomoto,
    Image,
    Invariants,
    Sv,
    Egregium,
    VerifyForms,
    Kz,
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Command::Lattice => "lattice",
            Command::Aomoto => "aomoto",
            Command::Image => "image",
            Command::Invariants => "invariants",
            Command::Sv => "sv",
            Command::Egregium => "egregium",
            Command::VerifyForms => "verify-forms",
            Command::Kz => "kz",
        };
        f.write_str(s)
    }
}

/// A rational in the config, written as `"p/q"`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Q(#[serde(with = "rational_serde")] pub Rational);

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraConfig {
    #[serde(rename = "type")]
    pub cartan_type: CartanType,
    pub rank: usize,
}

impl Default for AlgebraConfig {
    fn default() -> Self {
        AlgebraConfig { cartan_type: CartanType::A, rank: 1 }
    }
}

/// An explicit arrangement, used instead of the one built from representation data.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArrangementConfig {
    pub dimension: usize,
    pub forms: Vec<AffineForm>,
    /// Defaults to 1 for every form.
    #[serde(default)]
    pub weights: Option<Vec<Q>>,
    #[serde(default)]
    pub coloring: Option<Vec<usize>>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Options {
    /// Random points per check in `verify-forms`.
    pub num_points: Option<usize>,
    /// Whether `image` applies the χ projector; defaults to true when a coloring exists.
    pub chi: Option<bool>,
    pub tol: Option<f64>,
    pub precision_bits: Option<u32>,
    /// Base point `[re, im]` of the moving point in `kz`.
    pub base: Option<[Q; 2]>,
    /// One-based indices of the two points encircled by the Pochhammer loop.
    pub loop_points: Option<[usize; 2]>,
    /// Random configurations for the flat-section checks.
    pub samples: Option<usize>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobConfig {
    #[serde(default)]
    pub algebra: AlgebraConfig,
    /// Highest weights, one coordinate list per marked point.
    #[serde(default)]
    pub weights: Vec<Vec<Q>>,
    #[serde(default)]
    pub weight_basis: WeightBasis,
    #[serde(default)]
    pub points: Vec<Q>,
    #[serde(default)]
    pub kappa: Option<Q>,
    #[serde(default)]
    pub level: Option<u64>,
    #[serde(default)]
    pub levels: Vec<u64>,
    /// Simple root index coloring each variable.
    #[serde(default)]
    pub beta: Option<Vec<usize>>,
    #[serde(default)]
    pub arrangement: Option<ArrangementConfig>,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub options: Options,
}

/// Parses a config, reporting the JSON path of the first offending field.
pub fn parse_config(text: &str) -> Result<JobConfig, CliError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        let pointer = if path == "." { "/".to_string() } else { format!("/{}", path.replace('.', "/")) };
        CliError::config(&pointer, e.into_inner())
    })
}

/// Command-line overrides of config fields.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub kappa: Option<String>,
    /// `re` or `re,im`.
    pub base: Option<String>,
    /// `p,q`, one-based.
    pub loop_points: Option<String>,
    pub tol: Option<f64>,
    pub precision_bits: Option<u32>,
}

impl Overrides {
    pub fn apply(&self, cfg: &mut JobConfig) -> Result<(), CliError> {
        if let Some(k) = &self.kappa {
            cfg.kappa = Some(Q(parse_rational(k).map_err(|e| CliError::config("--kappa", e))?));
        }
        if let Some(b) = &self.base {
            let parts: Vec<&str> = b.split(',').collect();
            if parts.is_empty() || parts.len() > 2 {
                return Err(CliError::config("--base", "expected re or re,im"));
            }
            let re = parse_rational(parts[0]).map_err(|e| CliError::config("--base", e))?;
            let im = match parts.get(1) {
                Some(s) => parse_rational(s).map_err(|e| CliError::config("--base", e))?,
                None => Rational::zero(),
            };
            cfg.options.base = Some([Q(re), Q(im)]);
        }
        if let Some(l) = &self.loop_points {
            let v: Vec<usize> = l
                .split(',')
                .map(|s| s.trim().parse::<usize>())
                .collect::<Result<_, _>>()
                .map_err(|e| CliError::config("--loop", e))?;
            if v.len() != 2 {
                return Err(CliError::config("--loop", "expected p,q"));
            }
            cfg.options.loop_points = Some([v[0], v[1]]);
        }
        if let Some(t) = self.tol {
            cfg.options.tol = Some(t);
        }
        if let Some(p) = self.precision_bits {
            cfg.options.precision_bits = Some(p);
        }
        Ok(())
    }
}

/// A command's output with its provenance.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub command: String,
    pub config: JobConfig,
    pub seeds: Value,
    pub result: Value,
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize") + "\n"
    }
}

// ---------------------------------------------------------------------------
// validation and defaults

const DEFAULT_NUM_POINTS: usize = 5;
const DEFAULT_SAMPLES: usize = 5;
const DEFAULT_LOOP: [usize; 2] = [2, 4];

fn root_data(cfg: &JobConfig) -> Result<RootData, CliError> {
    RootData::new(cfg.algebra.cartan_type, cfg.algebra.rank).map_err(|e| CliError::config("/algebra", e))
}

fn weights(cfg: &JobConfig, rd: &RootData) -> Result<Vec<Weight>, CliError> {
    if cfg.weights.is_empty() {
        return Err(CliError::config("/weights", "at least one weight is required"));
    }
    cfg.weights
        .iter()
        .enumerate()
        .map(|(i, w)| {
            if w.len() != rd.rank {
                return Err(CliError::config(&format!("/weights/{i}"), format!("expected {} coordinates", rd.rank)));
            }
            let coords = w.iter().map(|q| q.0.clone()).collect();
            Ok(match cfg.weight_basis {
                WeightBasis::Fundamental => Weight::fundamental(coords),
                WeightBasis::Root => Weight::root(coords),
            })
        })
        .collect()
}

fn points(cfg: &JobConfig, n: usize) -> Result<Vec<Rational>, CliError> {
    if cfg.points.len() != n {
        return Err(CliError::config("/points", format!("expected {n} points, got {}", cfg.points.len())));
    }
    for i in 0..n {
        for j in 0..i {
            if cfg.points[i] == cfg.points[j] {
                return Err(CliError::config(&format!("/points/{i}"), format!("coincides with point {j}")));
            }
        }
    }
    Ok(cfg.points.iter().map(|q| q.0.clone()).collect())
}

fn kappa(cfg: &JobConfig) -> Result<Rational, CliError> {
    let k = cfg.kappa.as_ref().ok_or_else(|| CliError::config("/kappa", "kappa is required"))?;
    if k.0.is_zero() {
        return Err(CliError::config("/kappa", "kappa must be nonzero"));
    }
    Ok(k.0.clone())
}

fn rep_input(cfg: &JobConfig) -> Result<RepArrangementInput, CliError> {
    let rd = root_data(cfg)?;
    let ws = weights(cfg, &rd)?;
    let pts = points(cfg, ws.len())?;
    Ok(RepArrangementInput { root_data: rd, weights: ws, points: pts, kappa: kappa(cfg)?, beta: cfg.beta.clone() })
}

fn explicit_arrangement(a: &ArrangementConfig) -> Result<WeightedArrangement, CliError> {
    for (i, f) in a.forms.iter().enumerate() {
        if f.gradient.len() != a.dimension {
            return Err(CliError::config(
                &format!("/arrangement/forms/{i}/gradient"),
                format!("expected {} coefficients", a.dimension),
            ));
        }
    }
    let weights = match &a.weights {
        Some(w) if w.len() != a.forms.len() => {
            return Err(CliError::config("/arrangement/weights", format!("expected {} weights", a.forms.len())))
        }
        Some(w) => w.iter().map(|q| q.0.clone()).collect(),
        None => vec![rat(1, 1); a.forms.len()],
    };
    WeightedArrangement::new(a.dimension, a.forms.clone(), weights, a.coloring.clone())
        .map_err(|e| CliError::config("/arrangement", e))
}

/// The explicit arrangement if given, else the one built from representation data.
fn arrangement(cfg: &JobConfig, command: Command) -> Result<WeightedArrangement, CliError> {
    match &cfg.arrangement {
        Some(a) => explicit_arrangement(a),
        None => {
            let input = rep_input(cfg)?;
            Ok(build_arrangement(&input, false).map_err(|e| domain(command)(&e))?.arrangement)
        }
    }
}

/// Fills every default the command uses, so the report records it.
fn resolve(cfg: &JobConfig, command: Command) -> Result<JobConfig, CliError> {
    let mut out = cfg.clone();
    let o = &mut out.options;
    match command {
        Command::VerifyForms => {
            o.num_points.get_or_insert(DEFAULT_NUM_POINTS);
        }
        Command::Image => {
            let colored = match &cfg.arrangement {
                Some(a) => a.coloring.is_some(),
                None => true,
            };
            o.chi.get_or_insert(colored);
        }
        Command::Kz => {
            let d = TransportOptions::default();
            o.tol.get_or_insert(d.tol);
            o.precision_bits.get_or_insert(crate::exactfield::DEFAULT_PRECISION);
            o.base.get_or_insert([Q(rat(-1, 2)), Q(rat(0, 1))]);
            o.loop_points.get_or_insert(DEFAULT_LOOP);
            o.samples.get_or_insert(DEFAULT_SAMPLES);
        }
        _ => {}
    }
    if cfg.arrangement.is_none() && cfg.beta.is_none() && cfg.kappa.is_some() && !cfg.weights.is_empty() {
        if let Ok(input) = rep_input(cfg) {
            out.beta = input.resolved_beta().ok();
        }
    }
    if let Some(t) = out.options.tol {
        if !(t > 0.0 && t.is_finite()) {
            return Err(CliError::config("/options/tol", "tolerance must be positive"));
        }
    }
    if let Some(p) = out.options.precision_bits {
        if p < 64 {
            return Err(CliError::config("/options/precision_bits", "at least 64 bits are required"));
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// commands

/// Runs `command` on `cfg`.
pub fn run(command: Command, cfg: &JobConfig) -> Result<Report, CliError> {
    let resolved = resolve(cfg, command)?;
    let result = match command {
        Command::Lattice => lattice(&resolved)?,
        Command::Aomoto => aomoto(&resolved)?,
        Command::Image => image(&resolved)?,
        Command::Invariants => invariants(&resolved)?,
        Command::Sv => sv(&resolved)?,
        Command::Egregium => egregium(&resolved)?,
        Command::VerifyForms => verify_forms(&resolved)?,
        Command::Kz => kz(&resolved)?,
    };
    Ok(Report {
        schema: SCHEMA_VERSION,
        command: command.to_string(),
        seeds: json!({ "seed": resolved.seed }),
        config: resolved,
        result,
    })
}

fn lattice_counts(l: &IntersectionLattice) -> Value {
    let mut m = serde_json::Map::new();
    for c in 1..=l.dimension() + 1 {
        let n = if c <= l.top_codim() { l.count(c) } else { 0 };
        m.insert(format!("codim{c}"), json!(n));
    }
    Value::Object(m)
}

fn lattice(cfg: &JobConfig) -> Result<Value, CliError> {
    let arr = arrangement(cfg, Command::Lattice)?;
    let l = intersection_lattice(&arr);
    let mut out = lattice_counts(&l);
    let obj = out.as_object_mut().unwrap();
    obj.insert("dimension".into(), json!(arr.dimension()));
    obj.insert("num_hyperplanes".into(), json!(arr.num_forms()));
    obj.insert("os_dims".into(), json!((0..=arr.dimension()).map(|p| os_dimension(&l, p)).collect::<Vec<_>>()));
    Ok(out)
}

fn aomoto(cfg: &JobConfig) -> Result<Value, CliError> {
    let err = domain(Command::Aomoto);
    let arr = arrangement(cfg, Command::Aomoto)?;
    let l = intersection_lattice(&arr);
    let complex = AomotoComplex::new(&arr, &l);
    let m = complex.top_degree();
    let chi = match arr.coloring() {
        Some(_) => {
            let g = color_group(&arr).map_err(|e| err(&e))?;
            let dims = (0..=m)
                .map(|p| chi_projector(&arr, &g, p).map(|proj| complex.chi_dim(p, &proj)))
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| err(&e))?;
            json!(dims)
        }
        None => Value::Null,
    };
    Ok(json!({
        "dim_a": (0..=m).map(|p| complex.dim_a(p)).collect::<Vec<_>>(),
        "dim_h": (0..=m).map(|p| complex.dim_h(p)).collect::<Vec<_>>(),
        "chi_dim_h": chi,
        "num_hyperplanes": arr.num_forms(),
    }))
}

fn rational_strings(v: &[Rational]) -> Vec<String> {
    v.iter().map(format_rational).collect()
}

fn image(cfg: &JobConfig) -> Result<Value, CliError> {
    let arr = arrangement(cfg, Command::Image)?;
    let l = intersection_lattice(&arr);
    let complex = AomotoComplex::new(&arr, &l);
    let use_chi = cfg.options.chi.unwrap_or(false);
    let img = shapovalov_image(&arr, &complex, use_chi).map_err(|e| domain(Command::Image)(&e))?;
    let sets = subsets(arr.num_forms(), complex.top_degree());
    Ok(json!({
        "rank": img.rank,
        "chi": use_chi,
        "top_cohomology_dim": complex.dim_h(complex.top_degree()),
        "monomials": sets,
        "basis": img.basis.iter().map(|v| rational_strings(v)).collect::<Vec<_>>(),
    }))
}

fn invariants(cfg: &JobConfig) -> Result<Value, CliError> {
    let err = domain(Command::Invariants);
    let rd = root_data(cfg)?;
    let ws = weights(cfg, &rd)?;
    let mut out = json!({
        "algebra": format!("{}{}", rd.cartan_type, rd.rank),
        "num_positive_roots": rd.positive_roots.len(),
        "dual_coxeter": rd.dual_coxeter,
        "highest_root": rd.highest_root,
        "invariants_dim": invariants_dim(&rd, &ws).map_err(|e| err(&e))?,
        "coinvariants_dim": coinvariants_quotient(&rd, &ws).map_err(|e| err(&e))?.dim(),
    });
    let mut levels = cfg.levels.clone();
    if let Some(l) = cfg.level {
        if !levels.contains(&l) {
            levels.push(l);
        }
    }
    if !levels.is_empty() {
        let pts = points(cfg, ws.len())?;
        let mut dims = serde_json::Map::new();
        for &l in &levels {
            dims.insert(l.to_string(), json!(conformal_block_dim(&rd, &ws, l, &pts).map_err(|e| err(&e))?));
        }
        let obj = out.as_object_mut().unwrap();
        if let Some(l) = cfg.level {
            obj.insert("conformal_block_dim".into(), dims[&l.to_string()].clone());
        }
        obj.insert("conformal_block_dims".into(), Value::Object(dims));
    }
    Ok(out)
}

fn sv(cfg: &JobConfig) -> Result<Value, CliError> {
    let err = domain(Command::Sv);
    let input = rep_input(cfg)?;
    let ms = crate::liealg::sl2_highest_weights(&input.root_data, &input.weights).map_err(|e| err(&e))?;
    let space = TensorSpace::new(&ms);
    let svarr = build_arrangement(&input, false).map_err(|e| err(&e))?;
    let arr = &svarr.arrangement;
    let l = intersection_lattice(arr);
    let complex = AomotoComplex::new(arr, &l);
    let top = complex.top_cohomology();
    let sets = subsets(arr.num_forms(), complex.top_degree());
    let mut forms = Vec::new();
    let mut vectors = Vec::new();
    for psi in space.invariant_functionals() {
        let v = omega_sv(&input, &svarr, &complex, &restrict_to_zero_weight(&space, &psi), cfg.seed).map_err(|e| err(&e))?;
        let terms: Vec<Value> = sets
            .iter()
            .zip(&v.coeffs)
            .filter(|(_, c)| !c.is_zero())
            .map(|(s, c)| json!({ "monomial": s, "coeff": format_rational(c) }))
            .collect();
        forms.push(json!({ "functional": rational_strings(&psi), "expansion": terms }));
        vectors.push(v.coeffs);
    }
    let rank = top.rank(&vectors);
    Ok(json!({
        "invariants_dim": vectors.len(),
        "sv_rank": rank,
        "injective": rank == vectors.len(),
        "top_cohomology_dim": top.dim(),
        "forms": forms,
    }))
}

fn egregium(cfg: &JobConfig) -> Result<Value, CliError> {
    let input = rep_input(cfg)?;
    let r = egregium_check(&input, cfg.seed).map_err(|e| domain(Command::Egregium)(&e))?;
    Ok(serde_json::to_value(r).expect("report serializes"))
}

fn verify_forms(cfg: &JobConfig) -> Result<Value, CliError> {
    let err = domain(Command::VerifyForms);
    let arr = arrangement(cfg, Command::VerifyForms)?;
    let m = arr.dimension();
    let n = cfg.options.num_points.unwrap_or(DEFAULT_NUM_POINTS);
    let fs = DiagonalFormSpec::coordinates(m, vec![]).functions;
    let mut checks = Vec::new();
    let mut all = true;
    for k in 1..=m {
        let r = verify_grundlegend(&arr, &fs, k, n, cfg.seed.wrapping_add(k as u64)).map_err(|e| err(&e))?;
        all &= r.holds;
        checks.push(json!({ "k": k, "holds": r.holds, "points_checked": r.points_checked, "index_sets_checked": r.index_sets_checked }));
    }
    // a perturbed weight on the left side must be detected
    let mut w = arr.weights().to_vec();
    w[0] += rat(1, 7);
    let wrong = arr.with_weights(w).map_err(|e| err(&e))?;
    let control = verify_grundlegend_pair(&wrong, &arr, &fs, 1, n, cfg.seed).map_err(|e| err(&e))?;
    Ok(json!({
        "dimension": m,
        "checks": checks,
        "all_hold": all,
        "control_detected": !control.holds,
    }))
}

fn complex_of(q: &[Q; 2], prec: u32) -> BigComplex {
    BigComplex::from_rationals(&q[0].0, &q[1].0, prec)
}

fn kz(cfg: &JobConfig) -> Result<Value, CliError> {
    let err = domain(Command::Kz);
    let rd = root_data(cfg)?;
    let ws = weights(cfg, &rd)?;
    let pts = points(cfg, ws.len())?;
    let k = kappa(cfg)?;
    let prec = cfg.options.precision_bits.expect("resolved");
    let opts = TransportOptions { tol: cfg.options.tol.expect("resolved"), ..Default::default() };
    let base = complex_of(cfg.options.base.as_ref().expect("resolved"), prec);
    let [p, q] = cfg.options.loop_points.expect("resolved");
    for (i, x) in [p, q].into_iter().enumerate() {
        if x < 2 || x > ws.len() {
            return Err(CliError::config(&format!("/options/loop_points/{i}"), format!("must be between 2 and {}", ws.len())));
        }
    }
    let zc: Vec<BigComplex> = pts.iter().map(|z| BigComplex::from_rational(z, prec)).collect();
    let sys = KzSystem::new(&rd, &ws, zc, k).map_err(|e| err(&e))?;
    let geometry = LoopGeometry::default();
    let monodromy = monodromy_report(&sys, p - 1, q - 1, &base, &opts, &geometry).map_err(|e| err(&e))?;
    let generators = generator_reports(&sys, &base, &opts, &geometry).map_err(|e| err(&e))?;
    let casimirs: serde_json::Map<String, Value> = sys
        .omegas()
        .iter()
        .map(|((j, k), m)| (format!("{}{}", j + 1, k + 1), json!(m.rows_vec().iter().map(|r| rational_strings(r)).collect::<Vec<_>>())))
        .collect();
    let four_point = sys.num_points() == 4 && sys.dim() == 2 && ws.iter().all(|w| *w == Weight::omega(1, 0)) && rd.is_sl2();
    let sections = if four_point {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        let mut phi: f64 = 0.0;
        let mut fv: f64 = 0.0;
        let mut wrong = f64::INFINITY;
        for _ in 0..cfg.options.samples.expect("resolved") {
            let z = sample_configuration(&mut rng, 0.1, prec);
            let r = |s: &ProductSection, quo: &[Vec<BigComplex>]| flat_section_residual(&sys, s, &z, quo).map_err(|e| err(&e));
            phi = phi.max(r(&ProductSection::phi_tilde(rat(-1, 6)), &[])?);
            wrong = wrong.min(r(&ProductSection::phi_tilde(rat(-1, 5)), &[])?);
            let ker = conformal_kernel(&sys, &z, 1).map_err(|e| err(&e))?;
            fv = fv.max(r(&ProductSection::f_v(), &ker)?);
        }
        json!({ "phi_tilde_residual": phi, "f_v_residual": fv, "wrong_exponent_residual": wrong })
    } else {
        Value::Null
    };
    let curvature = curvature_check(&sys, 2, 5, cfg.seed).map_err(|e| err(&e))?;
    let (a, b, c) = (rat(1, 3), rat(-1, 3), rat(1, 3));
    let two = BigComplex::from_f64(2.0, 0.0, prec);
    let f2 = hyp2f1(&a, &b, &c, &two, prec).map_err(|e| err(&e))?;
    let half = BigComplex::from_f64(0.5, 0.0, prec);
    let agree = (hyp2f1(&a, &b, &c, &half, prec).map_err(|e| err(&e))? - hyp2f1_series(&a, &b, &c, &half, prec).map_err(|e| err(&e))?).abs_f64();
    Ok(json!({
        "casimirs": casimirs,
        "monodromy": monodromy,
        "generators": generators,
        "flat_sections": sections,
        "curvature": curvature,
        "hyp2f1_at_2": { "value": crate::kz::pair(&f2), "abs": f2.abs_f64(), "series_agreement_at_half": agree },
        "precision_bits": prec,
        "points": rational_strings(&pts),
        "kappa": format_rational(&sys.kappa),
    }))
}

/// Loads a config file, applies overrides and runs the command.
pub fn execute(command: Command, config_path: &str, overrides: &Overrides) -> Result<Report, CliError> {
    let text = std::fs::read_to_string(config_path)
        .map_err(|e| CliError::Io { path: config_path.to_string(), message: e.to_string() })?;
    let mut cfg = parse_config(&text)?;
    overrides.apply(&mut cfg)?;
    run(command, &cfg)
}

/// Resolved-point helper for callers that build configs in code.
pub fn sl2_config(ms: &[i64], points: &[Rational], kappa: Rational) -> JobConfig {
    JobConfig {
        weights: ms.iter().map(|&m| vec![Q(rat(m, 1))]).collect(),
        points: points.iter().cloned().map(Q).collect(),
        kappa: Some(Q(kappa)),
        ..Default::default()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn four() -> JobConfig {
        sl2_config(&[1, 1, 1, 1], &[rat(-1, 2), rat(0, 1), rat(1, 2), rat(1, 1)], rat(3, 1))
    }

    #[test]
    fn parse_reports_field_path() {
        let e = parse_config(r#"{"kappa": "1/0"}"#).unwrap_err();
        assert!(matches!(&e, CliError::Config { pointer, .. } if pointer == "/kappa"), "{e}");
        let e = parse_config(r#"{"options": {"tol": "x"}}"#).unwrap_err();
        assert!(matches!(&e, CliError::Config { pointer, .. } if pointer == "/options/tol"), "{e}");
        let e = parse_config(r#"{"bogus": 1}"#).unwrap_err();
        assert_eq!(e.exit_code(), 2);
        let c = parse_config(r#"{"weights": [["1"], [1]], "points": ["0", "1/2"], "kappa": 7}"#).unwrap();
        assert_eq!(c.points[1].0, rat(1, 2));
        assert_eq!(c.kappa.unwrap().0, rat(7, 1));
    }

    #[test]
    fn lattice_of_two_points() {
        let cfg = JobConfig {
            arrangement: Some(ArrangementConfig {
                dimension: 1,
                forms: vec![AffineForm::new(rat(-1, 1), vec![rat(1, 1)]), AffineForm::new(rat(1, 1), vec![rat(1, 1)])],
                weights: None,
                coloring: None,
            }),
            ..Default::default()
        };
        let r = run(Command::Lattice, &cfg).unwrap();
        assert_eq!(r.result["codim1"], json!(2));
        assert_eq!(r.result["codim2"], json!(0));
        assert_eq!(r.schema, "1");
    }

    #[test]
    fn invariants_with_level() {
        let mut cfg = four();
        cfg.level = Some(1);
        let r = run(Command::Invariants, &cfg).unwrap();
        assert_eq!(r.result["conformal_block_dim"], json!(1));
        assert_eq!(r.result["invariants_dim"], json!(2));
    }

    #[test]
    fn aomoto_and_resolved_beta() {
        let r = run(Command::Aomoto, &four()).unwrap();
        assert_eq!(r.config.beta, Some(vec![0, 0]));
        assert_eq!(r.result["dim_h"][2], json!(12));
    }

    #[test]
    fn config_errors() {
        let mut cfg = four();
        cfg.points.pop();
        let e = run(Command::Egregium, &cfg).unwrap_err();
        assert!(matches!(&e, CliError::Config { pointer, .. } if pointer == "/points"));
        let mut cfg = four();
        cfg.kappa = None;
        assert_eq!(run(Command::Sv, &cfg).unwrap_err().exit_code(), 2);
        let mut cfg = four();
        cfg.beta = Some(vec![0]);
        assert_eq!(run(Command::Egregium, &cfg).unwrap_err().exit_code(), 1);
        let mut o = Overrides { loop_points: Some("2;4".into()), ..Default::default() };
        assert!(o.apply(&mut four()).is_err());
        o.loop_points = Some("2,3".into());
        let mut c = four();
        o.apply(&mut c).unwrap();
        assert_eq!(c.options.loop_points, Some([2, 3]));
    }
}
