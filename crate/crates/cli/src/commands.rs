use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_complex::Complex64;
use serde_json::{json, Value};
use wharm_core::angles::{
    construct_finite, infinite_prefix, is_admissible, is_minimal, leq, lower_bound, AdmissibilityMode, FunctionOfAngles,
};
use wharm_core::bivar_poly::{binomial_coefficients, h_poly, p_poly, s_poly};
use wharm_core::hypergeom::f_factor;
use wharm_core::kernels::{poisson_integral, poisson_kernel, IaPowerKernel, ToroidalDistribution, SERIES_TOL};
use wharm_core::obstruction::{recover_coefficients, ObstructionFunction, RECOVERY_ANGLES};
use wharm_core::verify::{run_suite, RunReport, VerifyOptions};
use wharm_core::zeros::{certify_p_circle_free, AnnulusCertificate, ek_annulus, min_modulus_on_circle, roots, Verdict, DEFAULT_GRID};
use wharm_core::{alpha::ratio_to_f64, Error};

use crate::render::{self, complex, complex_list, float, Table};
use crate::{parse, Cli, Command, EvalCmd, FoaCmd, Format, ObstructionArgs, RecoverArgs, RootsArgs, TraceArgs, TraceKind};

pub struct Outcome {
    pub text: Option<String>,
    pub code: u8,
    pub error: Option<String>,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome { text: Some(text), code: 0, error: None }
    }

    fn flag(message: String) -> Self {
        Outcome { text: None, code: 2, error: Some(message) }
    }

    /// Library errors: parse errors count as flag errors, everything else as
    /// a domain error reported in JSON as well.
    fn core(err: Error) -> Self {
        if let Error::Parse(_) = err {
            return Self::flag(err.to_string());
        }
        let mut body = json!({ "error": err.to_string() });
        match err {
            Error::NotAdmissible { witness } => body["witness"] = json!(witness),
            Error::HypothesisViolation(index) => body["witness"] = json!(index),
            _ => {}
        }
        Outcome { text: Some(render::json(&body)), code: 3, error: Some(err.to_string()) }
    }
}

type Step<T> = std::result::Result<T, Outcome>;

fn core<T>(r: wharm_core::Result<T>) -> Step<T> {
    r.map_err(Outcome::core)
}

fn flag<T>(r: std::result::Result<T, String>) -> Step<T> {
    r.map_err(Outcome::flag)
}

pub fn run(cli: &Cli) -> Outcome {
    let result = match &cli.command {
        Command::Eval(cmd) => eval(cli, cmd),
        Command::Verify { suite, cases } => verify(cli, suite.name(), *cases),
        Command::Foa(cmd) => foa(cli, cmd),
        Command::Roots(args) => roots_cmd(cli, args),
        Command::Certify(args) => certify(cli, &args.alpha, args.k, args.roots),
        Command::Trace(args) => trace(cli, args),
        Command::Recover(args) => recover(cli, args),
    };
    result.unwrap_or_else(|outcome| outcome)
}

fn emit(cli: &Cli, default: Format, json: impl FnOnce() -> Value, table: impl FnOnce() -> Table) -> String {
    match cli.format.unwrap_or(default) {
        Format::Json => render::json(&json()),
        Format::Csv => table().to_csv(),
    }
}

fn complex_table(name: &str, zs: &[Complex64]) -> Table {
    let mut t = Table::new(&["index", &format!("{name}_re"), &format!("{name}_im")]);
    for (i, z) in zs.iter().enumerate() {
        t.push(vec![i.to_string(), float(z.re), float(z.im)]);
    }
    t
}

fn eval(cli: &Cli, cmd: &EvalCmd) -> Step<Outcome> {
    let tol = cli.tol.unwrap_or(SERIES_TOL);
    let value = match cmd {
        EvalCmd::Kernel(a) => core(poisson_kernel(&a.alpha, a.z))?,
        EvalCmd::FFactor { alpha, k, x } => Complex64::new(core(f_factor(*alpha, *k, *x))?, 0.0),
        EvalCmd::P(a) => p_poly(&a.alpha, a.k).eval(a.z),
        EvalCmd::S(a) => s_poly(&a.alpha, a.k).eval(a.z),
        EvalCmd::H(a) => h_poly(&a.alpha, a.k).eval(a.z),
        EvalCmd::IaPower(a) => core(IaPowerKernel::new(&a.alpha, a.k).eval(a.z))?,
        EvalCmd::Integral { alpha, z, dirac, trig } => {
            let dist = match (dirac, trig) {
                (_, Some(list)) => ToroidalDistribution::trig_poly(flag(parse::fourier_list(list))?),
                (Some(m), None) => ToroidalDistribution::dirac_derivative(*m),
                (None, None) => ToroidalDistribution::dirac(),
            };
            core(poisson_integral(alpha, &dist, *z, tol))?
        }
    };
    Ok(Outcome::ok(emit(cli, Format::Json, || json!({ "value": complex(value) }), || complex_table("value", &[value]))))
}

fn verify(cli: &Cli, suite: &str, cases: Option<usize>) -> Step<Outcome> {
    let opts = VerifyOptions { seed: cli.seed, tol: cli.tol, cases };
    let report: RunReport = core(run_suite(suite, &opts))?;
    let text = emit(
        cli,
        Format::Json,
        || serde_json::to_value(&report).expect("report serializes"),
        || {
            let mut t = Table::new(&["index", "check", "passed", "residual"]);
            for c in &report.details {
                t.push(vec![c.index.to_string(), c.check.replace(',', ";"), c.passed.to_string(), float(c.residual)]);
            }
            t
        },
    );
    let code = if report.passed() { 0 } else { 1 };
    let error = (code != 0).then(|| format!("{} of {} cases failed", report.failures, report.cases));
    Ok(Outcome { text: Some(text), code, error })
}

fn family_json(foa: &FunctionOfAngles) -> Step<Value> {
    let entries = core(foa.entries(0))?;
    Ok(serde_json::to_value(entries).expect("entries serialize"))
}

fn family_table(foa: &FunctionOfAngles) -> Step<Table> {
    let mut t = Table::new(&["angle", "eta"]);
    for e in core(foa.entries(0))? {
        t.push(vec![e.angle.to_string(), e.eta.to_string()]);
    }
    Ok(t)
}

fn family_outcome(cli: &Cli, foa: &FunctionOfAngles, extra: Value) -> Step<Outcome> {
    let mut body = json!({ "family": family_json(foa)? });
    if let (Value::Object(target), Value::Object(fields)) = (&mut body, extra) {
        target.extend(fields);
    }
    let table = family_table(foa)?;
    Ok(Outcome::ok(emit(cli, Format::Json, || body, || table)))
}

fn foa(cli: &Cli, cmd: &FoaCmd) -> Step<Outcome> {
    match cmd {
        FoaCmd::Construct { angles, tail } => {
            let foa = match tail {
                Some(tail) => core(construct_finite(angles, tail.clone()))?,
                None => FunctionOfAngles::Finite(core(infinite_prefix(angles))?),
            };
            let complete = tail.is_some();
            family_outcome(cli, &foa, json!({ "complete": complete }))
        }
        FoaCmd::Check { family, brute_force } => {
            let foa = flag(parse::family(&family.family))?;
            let mode = brute_force.map_or(AdmissibilityMode::ExactRanges, AdmissibilityMode::BruteForce);
            let report = core(is_admissible(&foa, mode))?;
            let text = emit(
                cli,
                Format::Json,
                || serde_json::to_value(&report).expect("report serializes"),
                || {
                    let mut t = Table::new(&["admissible", "witness"]);
                    t.push(vec![report.admissible.to_string(), report.witness_failure.map_or(String::new(), |w| w.to_string())]);
                    t
                },
            );
            let error = report.witness_failure.map(|w| Error::NotAdmissible { witness: w }.to_string());
            Ok(Outcome { text: Some(text), code: if report.admissible { 0 } else { 3 }, error })
        }
        FoaCmd::Minimize { family } => {
            let foa = flag(parse::family(&family.family))?;
            let minimal = core(is_minimal(&foa))?;
            let below = if minimal { foa } else { core(lower_bound(&foa, 64))? };
            family_outcome(cli, &below, json!({ "input_minimal": minimal }))
        }
        FoaCmd::LowerBound { family, max_steps } => {
            let foa = flag(parse::family(&family.family))?;
            let below = core(lower_bound(&foa, *max_steps))?;
            let certificate = json!({ "leq": core(leq(&below, &foa))?, "minimal": core(is_minimal(&below))? });
            family_outcome(cli, &below, certificate)
        }
    }
}

fn certificate_json(cert: &AnnulusCertificate, found: Option<&[Complex64]>) -> Value {
    let mut body = serde_json::to_value(cert).expect("certificate serializes");
    if let Some(zs) = found {
        body["roots"] = complex_list(zs);
    }
    body
}

fn roots_cmd(cli: &Cli, args: &RootsArgs) -> Step<Outcome> {
    let coeffs: Vec<Complex64> = match (&args.coeffs, &args.alpha, args.k) {
        (Some(list), _, _) => flag(parse::complex_list(list))?,
        (None, Some(alpha), Some(k)) => {
            binomial_coefficients(alpha, k).iter().map(|c| Complex64::new(ratio_to_f64(c), 0.0)).collect()
        }
        _ => return Err(Outcome::flag("roots needs --coeffs or --alpha with --k".into())),
    };
    let found = core(roots(&coeffs))?;
    // The annulus only applies to positive real coefficients.
    let real: Option<Vec<f64>> = coeffs.iter().map(|c| (c.im == 0.0 && c.re > 0.0).then_some(c.re)).collect();
    let cert = real.and_then(|r| ek_annulus(&r).ok());
    let body = match &cert {
        Some(cert) => certificate_json(cert, Some(&found)),
        None => json!({ "roots": complex_list(&found) }),
    };
    Ok(Outcome::ok(emit(cli, Format::Json, || body, || complex_table("root", &found))))
}

fn certify(cli: &Cli, alpha: &wharm_core::AlphaParam, k: u32, with_roots: bool) -> Step<Outcome> {
    let cert = core(certify_p_circle_free(alpha, k))?;
    let min_modulus = min_modulus_on_circle(alpha, k, DEFAULT_GRID);
    let found = if with_roots || cert.verdict == Verdict::Undecided {
        let coeffs: Vec<Complex64> =
            binomial_coefficients(alpha, k).iter().map(|c| Complex64::new(ratio_to_f64(c), 0.0)).collect();
        Some(core(roots(&coeffs))?)
    } else {
        None
    };
    let mut body = certificate_json(&cert, found.as_deref());
    body["min_modulus"] = json!(min_modulus);
    let text = emit(
        cli,
        Format::Json,
        || body.clone(),
        || {
            let mut t = Table::new(&["r", "R", "verdict", "min_modulus"]);
            let verdict = body["verdict"].as_str().unwrap_or_default().to_string();
            t.push(vec![float(cert.inner), float(cert.outer), verdict, float(min_modulus)]);
            t
        },
    );
    Ok(Outcome::ok(text))
}

struct Shifted {
    u: ObstructionFunction,
    center: f64,
}

impl Shifted {
    fn build(args: &ObstructionArgs) -> Step<Shifted> {
        let coeffs = flag(parse::complex_list(&args.coeffs))?;
        Ok(Shifted { u: core(ObstructionFunction::new(args.alpha.clone(), coeffs))?, center: args.center })
    }

    fn eval(&self, z: Complex64) -> Step<Complex64> {
        core(self.u.eval(z - self.center))
    }
}

fn geometric(from: f64, to: f64, n: usize) -> Step<Vec<f64>> {
    if !(from > 0.0 && to > from && n >= 2) {
        return Err(Outcome::flag("need 0 < --from < --to and --samples >= 2".into()));
    }
    let ratio = (to / from).powf(1.0 / (n - 1) as f64);
    Ok((0..n).map(|i| if i + 1 == n { to } else { from * ratio.powi(i as i32) }).collect())
}

fn trace(cli: &Cli, args: &TraceArgs) -> Step<Outcome> {
    let f = Shifted::build(&args.function)?;
    let params = geometric(args.from, args.to, args.samples)?;
    let alpha = args.function.alpha.to_f64();
    let (variable, header) = match args.what {
        TraceKind::Ray => ("t", "u_over_t_eta"),
        TraceKind::Geodesic => ("y", "u_over_y"),
    };
    let mut table =
        Table::new(&[variable, "u_re", "u_im", &format!("{header}_re"), &format!("{header}_im")]);
    for s in params {
        let (z, norm) = match args.what {
            TraceKind::Ray => {
                let theta = args.theta.as_ref().expect("required by clap").value();
                let eta = args.eta.unwrap_or(f.u.degree().unwrap_or(0) as f64 + alpha + 1.0);
                (Complex64::from_polar(s, theta), s.powf(eta))
            }
            TraceKind::Geodesic => (Complex64::new(args.x.expect("required by clap"), s), s),
        };
        let u = f.eval(z)?;
        table.push(vec![float(s), float(u.re), float(u.im), float(u.re / norm), float(u.im / norm)]);
    }
    Ok(Outcome::ok(match cli.format.unwrap_or(Format::Csv) {
        Format::Csv => table.to_csv(),
        Format::Json => render::json(&table.to_json()),
    }))
}

fn recover(cli: &Cli, args: &RecoverArgs) -> Step<Outcome> {
    let f = Shifted::build(&args.function)?;
    let n_max = args.n_max.unwrap_or(f.u.degree().unwrap_or(0));
    let evaluator = |z: Complex64| f.eval(z).unwrap_or(Complex64::new(f64::NAN, f64::NAN));
    let rec = core(recover_coefficients(&args.function.alpha, &evaluator, n_max, &RECOVERY_ANGLES))?;
    let error = (0..=n_max)
        .map(|k| (rec.coeffs[k] - f.u.coeffs().get(k).copied().unwrap_or_default()).norm())
        .fold(0.0, f64::max);
    let mut fields = BTreeMap::new();
    fields.insert("coeffs", complex_list(&rec.coeffs));
    fields.insert("angles_over_pi", json!(rec.angles.iter().map(|t| t / PI).collect::<Vec<_>>()));
    fields.insert("disagreement", json!(rec.disagreement.iter().cloned().fold(0.0, f64::max)));
    fields.insert("residual", json!(rec.residual));
    // Only meaningful without a shift; a shifted input has different coefficients.
    if args.function.center == 0.0 {
        fields.insert("max_coeff_error", json!(error));
    }
    let body = serde_json::to_value(fields).expect("map serializes");
    Ok(Outcome::ok(emit(cli, Format::Json, || body, || complex_table("coeff", &rec.coeffs))))
}
