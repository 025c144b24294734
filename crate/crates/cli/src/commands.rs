use std::collections::BTreeSet;
use std::f64::consts::TAU;
use std::fs;
use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use num_complex::Complex64;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use semimoment::algebra::{
    complex_to_real_moments, real_to_complex_moments, MonomialIndex, StarIndex, TrigPoly, ZkIndex,
};
use semimoment::io::{AnyMomentData, ExactMomentFile, SosProblem};
use semimoment::moments::{
    certificate_positivity_check, difference_set, gen_annulus, gen_dziury, gen_kael, gen_symmetry_break,
    havi_construct, havi_moments, is_difference_set, kernel_psd_check, lambda2new_construct, measure_moments,
    quadrant_lambda, quadrant_target, riesz_apply, AtomicMeasure, DiffSetResult, Measure, MomentData, MomentsError,
};
use semimoment::operator::{
    bram_system, contraction_certificate, dilation_block_check, subnormal_block_check, OperatorCoefficientSystem,
    OperatorTuple,
};
use semimoment::sos::{
    fejer_riesz, gram_to_squares, sos_feasibility, sumk_witness, FeasibilityOptions, FeasibilityReport, SosError,
    SquareList,
};

use crate::report::{Inputs, Outcome};
use crate::{ConstructCmd, DiffsetCmd, DilationCmd, GenCmd, Options, SosCmd, SubnormalCmd, TransformCmd};

fn write_out<T: Serialize>(opts: &Options, artifact: &T) -> Result<Value> {
    match &opts.out {
        Some(path) => {
            let text = serde_json::to_string_pretty(artifact)?;
            fs::write(path, text + "\n").with_context(|| format!("cannot write {}", path.display()))?;
            Ok(json!(path))
        }
        None => Ok(Value::Null),
    }
}

fn read_data(inputs: &mut Inputs, path: &Path) -> Result<AnyMomentData> {
    let text = inputs.read(path)?;
    AnyMomentData::from_json(&text).with_context(|| format!("{} is not a moment data file", path.display()))
}

/// Greedy maximal section: candidates in order of size, kept when every
/// kernel entry they need is present.
fn auto_section<K: StarIndex>(data: &MomentData<K>, mut candidates: Vec<K>) -> Vec<K> {
    candidates.sort_by_key(|c| (c.coords().iter().map(|x| x.abs()).sum::<i64>(), c.clone()));
    let mut section: Vec<K> = Vec::new();
    for c in candidates {
        let fits = data.system.contains(&c.combine(&c.star()))
            && section.iter().all(|t| data.system.contains(&c.combine(&t.star())) && data.system.contains(&t.combine(&c.star())));
        if fits {
            section.push(c);
        }
    }
    section
}

fn coordinate_range<K: StarIndex>(data: &MomentData<K>) -> (i64, i64) {
    let coords: Vec<i64> = data.system.truncation().flat_map(StarIndex::coords).collect();
    (coords.iter().copied().min().unwrap_or(0), coords.iter().copied().max().unwrap_or(0))
}

fn planar_candidates(data: &MomentData<MonomialIndex>) -> Vec<MonomialIndex> {
    let (lo, hi) = coordinate_range(data);
    let lo = lo.min(0);
    (lo..=hi).flat_map(|m| (lo..=hi).map(move |n| MonomialIndex::new(m, n))).collect()
}

fn torus_candidates(data: &MomentData<ZkIndex>) -> Vec<ZkIndex> {
    let (_, hi) = coordinate_range(data);
    let mut points = vec![Vec::new()];
    for _ in 0..data.kappa() {
        points = points.into_iter().flat_map(|p| (0..=hi.max(0)).map(move |x| [p.clone(), vec![x]].concat())).collect();
    }
    points.into_iter().map(ZkIndex).collect()
}

fn check_sections<K>(opts: &Options, data: MomentData<K>, candidates: fn(&MomentData<K>) -> Vec<K>) -> Result<Outcome>
where
    K: StarIndex + Serialize + DeserializeOwned,
{
    let system = match data.system.symmetrized() {
        Ok(s) => s,
        Err((index, partner)) => {
            return Ok(Outcome::fail(
                json!({ "symmetrizable": false }),
                json!({ "index": index.coords(), "partner": partner.coords() }),
                format!("c{:?} is not the conjugate of c{:?}", index.coords(), partner.coords()),
            ))
        }
    };
    let data = MomentData::new(data.semigroup, system);
    let sections: Vec<Vec<K>> = match &opts.sections {
        Some(text) => serde_json::from_str(text).context("--sections must be a JSON list of index lists")?,
        None => vec![auto_section(&data, candidates(&data))],
    };
    let mut results = Vec::new();
    let mut witness = None;
    for section in &sections {
        let check = kernel_psd_check(&data, section, opts.psd_tol)?;
        if !check.pass && witness.is_none() {
            witness = Some(json!({
                "section": section.iter().map(StarIndex::coords).collect::<Vec<_>>(),
                "min_eigenvalue": check.min_eigenvalue,
                "minor": check.minor,
            }));
        }
        results.push(json!({
            "section": section.iter().map(StarIndex::coords).collect::<Vec<_>>(),
            "pass": check.pass,
            "min_eigenvalue": check.min_eigenvalue,
            "threshold": check.threshold,
            "minor": check.minor,
        }));
    }
    let payload = json!({ "symmetrizable": true, "sections": results });
    Ok(match witness {
        None => Outcome::pass(payload, format!("{} section(s) positive semidefinite", sections.len())),
        Some(w) => {
            let summary = format!("kernel section not PSD (min eigenvalue {})", w["min_eigenvalue"]);
            Outcome::fail(payload, w, summary)
        }
    })
}

pub fn moments_check(opts: &Options, inputs: &mut Inputs, path: &Path) -> Result<Outcome> {
    match read_data(inputs, path)? {
        AnyMomentData::Planar(d) => check_sections(opts, d, planar_candidates),
        AnyMomentData::Torus(d) => check_sections(opts, d, torus_candidates),
    }
}

fn certify_with<K>(opts: &Options, data: &MomentData<K>, text: &str) -> Result<Outcome>
where
    K: StarIndex + DeserializeOwned,
{
    let squares: SquareList<K> = serde_json::from_str(text).context("certificate is not a list of squares in the cone")?;
    let check = certificate_positivity_check(data, &squares, opts.tol)?;
    let payload = json!({ "value": check.value, "squares": squares.squares().len() });
    let summary = format!("Λ(Σ|q|²) = {}", check.value);
    Ok(Outcome::from_bool(check.pass, payload, json!({ "value": check.value }), summary))
}

pub fn certify(opts: &Options, inputs: &mut Inputs, data: &Path, certificate: &Path) -> Result<Outcome> {
    let data = read_data(inputs, data)?;
    let text = inputs.read(certificate)?;
    match data {
        AnyMomentData::Planar(d) => certify_with(opts, &d, &text),
        AnyMomentData::Torus(d) => certify_with(opts, &d, &text),
    }
}

#[derive(Deserialize)]
struct HaviParams {
    nu: AtomicMeasure,
    k: i64,
    truncation: Option<Vec<MonomialIndex>>,
}

fn default_max_diag() -> i64 {
    8
}

#[derive(Deserialize)]
struct Lambda2Params {
    nu: Vec<(f64, f64)>,
    c_kl: Complex64,
    k: i64,
    l: i64,
    #[serde(default = "default_max_diag")]
    max_diag: i64,
}

fn max_deviation(a: &MomentData<MonomialIndex>, expected: impl IntoIterator<Item = (MonomialIndex, Complex64)>) -> f64 {
    expected.into_iter().map(|(i, c)| (a.get(&i).unwrap_or_default() - c).norm()).fold(0.0, f64::max)
}

pub fn construct(opts: &Options, inputs: &mut Inputs, cmd: &ConstructCmd) -> Result<Outcome> {
    match cmd {
        ConstructCmd::Havi { params } => {
            let p: HaviParams = inputs.json(params)?;
            let pair = havi_construct(&p.nu, p.k)?;
            let k = p.k;
            let truncation = p
                .truncation
                .unwrap_or_else(|| (k..=k + 3).flat_map(|m| (k..=k + 3).map(move |n| MonomialIndex::new(m, n))).collect());
            let got = havi_moments(&pair, truncation.iter().copied())?;
            let shifted = measure_moments(
                &Measure::Atomic(p.nu.clone()),
                truncation.iter().map(|i| MonomialIndex::new(i.m - k, i.n - k)),
            )?;
            let expected = truncation.iter().map(|i| (*i, shifted.get(&MonomialIndex::new(i.m - k, i.n - k)).unwrap_or_default()));
            let deviation = max_deviation(&got, expected);
            let scale = got.system.iter().map(|(_, c)| c.norm()).fold(1.0, f64::max);
            let written = write_out(opts, &pair)?;
            let payload = json!({ "pair": pair, "max_deviation": deviation, "out": written });
            let summary = format!("a = {}, {} atoms, deviation {deviation:e}", pair.a, pair.mu.atoms.len());
            Ok(Outcome::from_bool(deviation <= opts.tol * scale, payload, json!({ "max_deviation": deviation }), summary))
        }
        ConstructCmd::Lambda2new { params } => {
            let p: Lambda2Params = inputs.json(params)?;
            let rays = match lambda2new_construct(&p.nu, p.c_kl, p.k, p.l) {
                Ok(r) => r,
                Err(MomentsError::InequalityViolated { value, bound }) => {
                    let w = json!({ "modulus": value, "bound": bound });
                    return Ok(Outcome::fail(json!({}), w, format!("|c_kl| = {value} exceeds {bound}")));
                }
                Err(e) => return Err(e.into()),
            };
            let measure = Measure::Ray(rays);
            let mut truncation: Vec<MonomialIndex> = (0..=p.max_diag).map(|m| MonomialIndex::new(m, m)).collect();
            truncation.push(MonomialIndex::new(p.k, p.l));
            truncation.push(MonomialIndex::new(p.l, p.k));
            let got = measure_moments(&measure, truncation)?;
            let power = |e: i64| -> f64 { p.nu.iter().map(|&(r, w)| w * if e == 0 { 1.0 } else { r.powi(e as i32) }).sum() };
            let mut expected: Vec<(MonomialIndex, Complex64)> =
                (0..=p.max_diag).map(|m| (MonomialIndex::new(m, m), Complex64::new(power(2 * m), 0.0))).collect();
            expected.push((MonomialIndex::new(p.k, p.l), p.c_kl));
            expected.push((MonomialIndex::new(p.l, p.k), p.c_kl.conj()));
            let deviation = max_deviation(&got, expected);
            let written = write_out(opts, &measure)?;
            let payload = json!({ "measure": measure, "max_deviation": deviation, "out": written });
            let pass = deviation <= 1e-10_f64.max(opts.tol);
            Ok(Outcome::from_bool(pass, payload, json!({ "max_deviation": deviation }), format!("two rays, deviation {deviation:e}")))
        }
    }
}

pub fn transform(opts: &Options, inputs: &mut Inputs, cmd: &TransformCmd) -> Result<Outcome> {
    let (path, forward) = match cmd {
        TransformCmd::Real2complex { input } => (input, true),
        TransformCmd::Complex2real { input } => (input, false),
    };
    let file: ExactMomentFile = inputs.json(path)?;
    let system = file.system();
    let out = if forward {
        real_to_complex_moments(&system, file.degree)?
    } else {
        complex_to_real_moments(&system, file.degree)?
    };
    let result = ExactMomentFile::new(file.degree, &out);
    let written = write_out(opts, &result)?;
    let summary = format!("{} values at degree {}", result.values.len(), file.degree);
    Ok(Outcome::pass(json!({ "output": result, "out": written }), summary))
}

#[derive(Deserialize)]
struct WitnessParams {
    lambda: Complex64,
    epsilon: f64,
}

fn grid_error(p: &TrigPoly, q: &TrigPoly) -> f64 {
    (0..4096)
        .map(|g| {
            let t = TAU * g as f64 / 4096.0;
            (q.eval_angle(t).norm_sqr() - p.eval_angle(t).re).abs()
        })
        .fold(0.0, f64::max)
}

pub fn sos(opts: &Options, inputs: &mut Inputs, cmd: &SosCmd) -> Result<Outcome> {
    match cmd {
        SosCmd::FejerRiesz { input } => {
            let p: TrigPoly = inputs.json(input)?;
            match fejer_riesz(&p, opts.tol) {
                Ok(q) => {
                    let err = grid_error(&p, &q);
                    let written = write_out(opts, &q)?;
                    let pass = err <= 1e-6 * p.conorm().max(1.0);
                    let payload = json!({ "factor": q, "sup_error": err, "out": written });
                    Ok(Outcome::from_bool(pass, payload, json!({ "sup_error": err }), format!("sup error {err:e}")))
                }
                Err(SosError::NotNonnegativeOnCircle { point, value }) => Ok(Outcome::fail(
                    json!({}),
                    json!({ "point": point, "value": value }),
                    format!("p({point}) = {value}"),
                )),
                Err(SosError::DegreeZeroNegative { value }) => {
                    Ok(Outcome::fail(json!({}), json!({ "value": value }), format!("negative constant {value}")))
                }
                Err(e) => Err(e.into()),
            }
        }
        SosCmd::Decompose { input } => {
            let problem: SosProblem = inputs.json(input)?;
            let options = FeasibilityOptions { max_iter: opts.max_iter, psd_tol: opts.psd_tol, seed: opts.seed, ..Default::default() };
            let report = sos_feasibility(&problem.target, &problem.basis, &options)?;
            match &report {
                FeasibilityReport::Certificate { certificate, min_eigenvalue, .. } => {
                    let squares = gram_to_squares(certificate, opts.psd_tol * certificate.gram().norm().max(1.0))?;
                    let written = write_out(opts, &squares)?;
                    let payload = json!({ "report": report, "squares": squares, "out": written });
                    Ok(Outcome::pass(payload, format!("Gram certificate, min eigenvalue {min_eigenvalue:e}")))
                }
                FeasibilityReport::Infeasible { point, value } => {
                    let w = json!({ "point": point, "value": value });
                    Ok(Outcome::fail(json!({ "report": report }), w, format!("target({point}) = {value}")))
                }
                FeasibilityReport::Unknown { residual, min_eigenvalue, .. } => {
                    let w = json!({ "residual": residual, "min_eigenvalue": min_eigenvalue });
                    Ok(Outcome::fail(json!({ "report": report }), w, format!("no certificate found (residual {residual:e})")))
                }
            }
        }
        SosCmd::Witness { params } => {
            let p: WitnessParams = inputs.json(params)?;
            if !(p.epsilon > 0.0) {
                bail!("epsilon must be positive, got {}", p.epsilon);
            }
            let w = sumk_witness(p.lambda, p.epsilon);
            let at_lambda = w.eval(p.lambda)?;
            let written = write_out(opts, &w)?;
            Ok(Outcome::pass(
                json!({ "witness": w, "value_at_lambda": at_lambda, "out": written }),
                format!("value at λ is {}", at_lambda.re),
            ))
        }
    }
}

fn parse_set(text: &str) -> Result<Vec<ZkIndex>> {
    let value: Value = serde_json::from_str(text).context("--set must be JSON")?;
    let items = value.as_array().ok_or_else(|| anyhow!("--set must be a JSON list"))?;
    items
        .iter()
        .map(|item| match item {
            Value::Number(n) => n.as_i64().map(|v| ZkIndex(vec![v])).ok_or_else(|| anyhow!("{n} is not an integer")),
            other => serde_json::from_value::<ZkIndex>(other.clone()).context("set entries must be integers or integer lists"),
        })
        .collect()
}

pub fn diffset(_opts: &Options, cmd: &DiffsetCmd) -> Result<Outcome> {
    match cmd {
        DiffsetCmd::Test { set, bound } => {
            let target = parse_set(set)?;
            if let Some(dim) = target.first().map(ZkIndex::dim) {
                if target.iter().any(|t| t.dim() != dim) {
                    bail!("set entries have different dimensions");
                }
            }
            match is_difference_set(&target, *bound) {
                DiffSetResult::Found { lambda } => {
                    Ok(Outcome::pass(json!({ "lambda": lambda }), format!("Λ = {:?}", lambda)))
                }
                DiffSetResult::NotFound { bound } => Ok(Outcome::fail(
                    json!({ "result": "not_found" }),
                    json!({ "bound": bound }),
                    format!("no Λ in [0, {bound}]^k"),
                )),
            }
        }
        DiffsetCmd::Quadrant { depth } => {
            if *depth < 1 {
                bail!("depth must be at least 1");
            }
            let lambda = quadrant_lambda(*depth);
            let got: BTreeSet<ZkIndex> =
                difference_set(&lambda).into_iter().filter(|p| p.0.iter().all(|c| c.abs() <= *depth)).collect();
            let target = quadrant_target(*depth);
            let missing: Vec<&ZkIndex> = target.difference(&got).collect();
            let extra: Vec<&ZkIndex> = got.difference(&target).collect();
            let payload = json!({ "lambda": lambda });
            let witness = json!({ "missing": missing, "extra": extra });
            let pass = missing.is_empty() && extra.is_empty();
            Ok(Outcome::from_bool(pass, payload, witness, format!("{} points", lambda.len())))
        }
    }
}

fn block_outcome(check: semimoment::operator::BlockCheck) -> Outcome {
    let summary = format!("min eigenvalue {} (threshold -{:e})", check.min_eigenvalue, check.threshold);
    let witness = json!({ "min_eigenvalue": check.min_eigenvalue });
    Outcome::from_bool(check.pass, json!(check), witness, summary)
}

pub fn dilation(opts: &Options, inputs: &mut Inputs, cmd: &DilationCmd) -> Result<Outcome> {
    let DilationCmd::Check { tuple, system, contraction } = cmd;
    let a: OperatorTuple = inputs.json(tuple)?;
    let sys: OperatorCoefficientSystem<ZkIndex> = match (system, contraction) {
        (Some(path), None) => inputs.json(path)?,
        (None, Some(r)) => contraction_certificate(a.kappa(), *r)?,
        _ => bail!("give exactly one of a system file or --contraction"),
    };
    Ok(block_outcome(dilation_block_check(&a, &sys, opts.psd_tol)?))
}

pub fn subnormal(opts: &Options, inputs: &mut Inputs, cmd: &SubnormalCmd) -> Result<Outcome> {
    let SubnormalCmd::Check { matrix, system, bram } = cmd;
    let s: OperatorTuple = inputs.json(matrix)?;
    if s.kappa() != 1 {
        bail!("expected a single matrix, found {}", s.kappa());
    }
    let sys: OperatorCoefficientSystem<MonomialIndex> = match (system, bram) {
        (Some(path), None) => inputs.json(path)?,
        (None, Some(n)) if *n >= 1 => bram_system(*n),
        _ => bail!("give exactly one of a system file or --bram n with n >= 1"),
    };
    Ok(block_outcome(subnormal_block_check(&s.matrices()[0], &sys, opts.psd_tol)?))
}

#[derive(Deserialize)]
struct AnnulusParams {
    lambda: Complex64,
    epsilon: f64,
    j: i64,
    k: i64,
    atoms: AtomicMeasure,
}

pub fn generate(opts: &Options, inputs: &mut Inputs, cmd: &GenCmd) -> Result<Outcome> {
    match cmd {
        GenCmd::Dziury { max } => {
            let data = gen_dziury((1..=*max).flat_map(|m| (1..=*max).map(move |n| MonomialIndex::new(m, n))))?;
            let written = write_out(opts, &data)?;
            Ok(Outcome::pass(json!({ "data": data, "out": written }), format!("{} moments", data.system.len())))
        }
        GenCmd::Kael { k, l, max } => {
            let (k, l) = (*k, *l);
            let top = max.unwrap_or(l);
            let (data, explanation) = gen_kael(k, l, (k..=top).flat_map(|m| (k..=top).map(move |n| MonomialIndex::new(m, n))))?;
            let written = write_out(opts, &data)?;
            Ok(Outcome::pass(json!({ "data": data, "explanation": explanation, "out": written }), explanation))
        }
        GenCmd::Annulus { params } => {
            let p: AnnulusParams = inputs.json(params)?;
            let (data, witness) = gen_annulus(p.lambda, p.epsilon, p.j, p.k, &p.atoms)?;
            let value = riesz_apply(&data, &witness)?;
            let written = write_out(opts, &data)?;
            let payload = json!({ "data": data, "witness_polynomial": witness, "riesz_value": value, "out": written });
            Ok(Outcome::from_bool(value.re < 0.0, payload, json!({ "riesz_value": value }), format!("Λ(witness) = {}", value.re)))
        }
        GenCmd::SymmetryBreak { data, k, l } => {
            let AnyMomentData::Planar(d) = read_data(inputs, data)? else {
                bail!("symmetry breaking needs planar data");
            };
            let broken = gen_symmetry_break(&d, *k, *l)?;
            let written = write_out(opts, &broken.data)?;
            let section = broken.section.iter().map(StarIndex::coords).collect::<Vec<_>>();
            let payload = json!({ "data": broken.data, "section": section, "out": written });
            Ok(Outcome::pass(payload, format!("c({k},{l}) replaced")))
        }
    }
}
