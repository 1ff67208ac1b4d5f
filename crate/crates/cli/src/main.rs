//! `trimult`: command-line front end for the trimult library.
//!
//! Exit status is 0 on success, 1 on usage or operational errors and 2 when
//! an identity check fails on the given input.

use std::fmt::Write as _;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::Serialize;
use serde_json::{json, Value};

use trimult::coeff::Coeff;
use trimult::derivation::{apply_variant, homog_d, rankin_bracket, Derivation, DerivationKind};
use trimult::hypergeom::{
    at_zero, formal_checks, leading_terms, numeric_checks, parse_complex, symbolic_at, ExpansionPoint, SamplePlan,
};
use trimult::ideals::{
    certify_case_one, certify_stable, kappa_report, membership, principal_stability, IdealError, Verdict,
    DEFAULT_BUDGET, DEFAULT_SEARCH_BOUND,
};
use trimult::multiplicity::{bound_audit, log_dist_hypersurface, ord_at_generic, ord_at_zero, DistPoint};
use trimult::params::{eta_scan, parse_params, ParamsError, TriangleParams};
use trimult::rational::format_rational;
use trimult::ring::{read_poly, AffinePoly, HomogPoly, Poly, VarSet};
use trimult::series::{AnySeries, SeriesJson};
use trimult::verify::verify_all;

const ORDER_ENV: &str = "TRIMULT_ORDER";
const DEFAULT_ORDER: usize = 20;
const DEFAULT_PARAMS: &str = "1/5,1/4,1/2";

#[derive(Parser, Debug)]
#[command(name = "trimult", version, about = "Differential algebra and multiplicity tools for triangle-group functions")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Global {
    /// Output format
    #[arg(long, value_enum, default_value_t = Emit::Text, global = true)]
    emit: Emit,
    /// Parameter triple alpha,beta,gamma
    #[arg(long, default_value = DEFAULT_PARAMS, global = true)]
    params: String,
    /// Truncation order N (default from TRIMULT_ORDER, else 20)
    #[arg(long, global = true)]
    order: Option<usize>,
    /// Seed for anything random; recorded in every JSON report
    #[arg(long, default_value_t = 0, global = true)]
    seed: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Emit {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Validate parameter triples and scan η
    #[command(subcommand)]
    Params(ParamsCmd),
    /// Apply D, D′ or H to a polynomial (HomogD for projective input)
    Derive {
        #[arg(long, default_value = "D")]
        kind: String,
        #[arg(allow_hyphen_values = true)]
        poly: String,
    },
    /// Rankin bracket [U, V] of two isobaric polynomials
    Bracket {
        #[arg(allow_hyphen_values = true)]
        u: String,
        #[arg(allow_hyphen_values = true)]
        v: String,
    },
    /// Stable-ideal certificates and memberships
    #[command(subcommand)]
    Ideal(IdealCmd),
    /// Hypergeometric expansions and checks
    #[command(subcommand)]
    Hyper(HyperCmd),
    /// Vanishing order at 0 or at an ordinary point
    Ord {
        /// 0 or a complex point such as 0.3+0.2i
        #[arg(long, default_value = "0")]
        at: String,
        /// Polynomial in tau, q, y0, y1, y2 (text or JSON)
        #[arg(allow_hyphen_values = true, required_unless_present = "series")]
        poly: Option<String>,
        /// A series in JSON form instead of a polynomial (prefix @ to read a file)
        #[arg(long, conflicts_with = "poly")]
        series: Option<String>,
    },
    /// −log Dist from the generator point to a hypersurface
    Dist {
        #[arg(long, default_value = "0")]
        at: String,
        /// Homogeneous polynomial in X0..X4 over Q[t]
        #[arg(allow_hyphen_values = true)]
        poly: String,
    },
    /// Empirical audit of the degree bound on random polynomials
    Audit {
        /// Partial degrees in tau, q, y0, y1, y2
        #[arg(long, default_value = "1,1,1,1,1")]
        profile: String,
        #[arg(long, default_value_t = 50)]
        samples: usize,
    },
    /// Run identity suites
    #[command(subcommand)]
    Verify(VerifyCmd),
}

#[derive(Subcommand, Debug)]
enum ParamsCmd {
    /// Validate a triple and print its derived constants
    Check {
        #[arg(required = true, num_args = 1..=3)]
        triple: Vec<String>,
    },
    /// Exact η scan over valid triples with bounded denominators
    Eta {
        #[arg(long, default_value_t = 30)]
        max_denominator: u64,
    },
}

#[derive(Subcommand, Debug)]
enum IdealCmd {
    /// Resultant certificate for the case y0 = 0
    CertifyCase1,
    /// D-stability certificate of the ideal spanned by the generators
    Stable {
        #[arg(long = "gen", required = true, allow_hyphen_values = true)]
        gens: Vec<String>,
        #[arg(long, default_value_t = DEFAULT_SEARCH_BOUND)]
        search_bound: usize,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: usize,
    },
    /// Ideal membership with cofactors
    Member {
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
        #[arg(long, required = true, num_args = 1..)]
        gens: Vec<String>,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: usize,
    },
    /// Facts about κ and l
    Kappa,
}

#[derive(Subcommand, Debug)]
enum HyperCmd {
    /// Puiseux expansions of u0, u0^2, y0, y1, y2 at 0, 1 or inf
    Expand {
        #[arg(long, default_value = "0")]
        point: String,
    },
    /// The twelve leading terms against their closed forms
    Leading,
    /// Formal identities at 0 and numeric connection checks
    Verify {
        /// Comma-separated complex sample points used for every check
        #[arg(long, allow_hyphen_values = true)]
        samples: Option<String>,
    },
}

#[derive(Subcommand, Debug)]
enum VerifyCmd {
    /// Every suite for one triple
    All,
}

enum Failure {
    Usage(String),
    Error(String),
    /// report already printed
    Identity(String),
}

impl<E: std::error::Error> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Error(e.to_string())
    }
}

#[derive(Serialize)]
struct Envelope<'a, T: Serialize> {
    command: &'a str,
    params: Option<String>,
    order: usize,
    seed: u64,
    result: T,
}

struct Ctx {
    emit: Emit,
    params_text: String,
    order: usize,
    seed: u64,
}

/// Usage error naming the rejected constraint, e.g. `OrderingViolated: …`.
fn params_error(e: ParamsError) -> Failure {
    let debug = format!("{e:?}");
    let kind: String = debug.chars().take_while(|c| c.is_alphanumeric()).collect();
    Failure::Usage(format!("{kind}: {e}"))
}

impl Ctx {
    fn params(&self) -> Result<TriangleParams, Failure> {
        parse_params(&self.params_text).map_err(params_error)
    }

    /// Prints the report; `text` renders it for humans.
    fn emit<T: Serialize>(&self, command: &str, params: Option<&TriangleParams>, result: &T, text: impl FnOnce() -> String) {
        match self.emit {
            Emit::Json => {
                let env = Envelope { command, params: params.map(|p| p.to_arg()), order: self.order, seed: self.seed, result };
                println!("{}", serde_json::to_string_pretty(&env).expect("reports serialize"));
            }
            Emit::Text => print!("{}", text()),
        }
    }
}

fn affine(text: &str) -> Result<AffinePoly, Failure> {
    let p: AffinePoly = read_poly(text, None).map_err(|e| Failure::Usage(format!("polynomial `{text}`: {e}")))?;
    match p.vars() {
        VarSet::Affine => Ok(p),
        v => Err(Failure::Usage(format!("`{text}` uses {} variables, expected tau, q, y0, y1, y2", v.name()))),
    }
}

fn point(text: &str) -> Result<DistPoint, Failure> {
    if text.trim() == "0" {
        return Ok(DistPoint::Zero);
    }
    parse_complex(text).map(DistPoint::Generic).ok_or_else(|| Failure::Usage(format!("cannot parse point `{text}`")))
}

fn read_arg(text: &str) -> Result<String, Failure> {
    match text.strip_prefix('@') {
        Some(path) => std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{path}: {e}"))),
        None => Ok(text.to_string()),
    }
}

fn poly_json<C: Coeff>(p: &Poly<C>) -> Value {
    json!({ "text": p.to_string(), "json": p.to_json() })
}

fn run_params(ctx: &Ctx, cmd: ParamsCmd) -> Result<(), Failure> {
    match cmd {
        ParamsCmd::Check { triple } => {
            let p = parse_params(&triple.join(",")).map_err(params_error)?;
            let k = p.derived_constants();
            let eta = format_rational(&p.eta());
            let result = json!({ "valid": true, "constants": k, "eta": eta });
            ctx.emit("params check", Some(&p), &result, || {
                format!(
                    "valid triple {p}\na = {}\nb = {}\nc = {}\nw = {}\nram = {}\neta = {eta}\n",
                    format_rational(&k.a),
                    format_rational(&k.b),
                    format_rational(&k.c),
                    format_rational(&k.w),
                    k.ram
                )
            });
        }
        ParamsCmd::Eta { max_denominator } => {
            let scan = eta_scan(max_denominator);
            ctx.emit("params eta", None, &scan, || {
                format!(
                    "{} triples with denominators <= {}; all eta > 0: {}; min eta {} at {}\n",
                    scan.triples_checked,
                    scan.max_denominator,
                    scan.all_positive,
                    format_rational(&scan.min_eta),
                    scan.argmin.as_ref().map(|p| p.to_string()).unwrap_or_else(|| "-".into())
                )
            });
            if !scan.all_positive {
                return Err(Failure::Identity(format!("eta <= 0 at {} triples", scan.failures.len())));
            }
        }
    }
    Ok(())
}

fn run_derive(ctx: &Ctx, kind: &str, poly: &str) -> Result<(), Failure> {
    let params = ctx.params()?;
    let kind = DerivationKind::parse(kind)
        .ok_or_else(|| Failure::Usage(format!("unknown derivation `{kind}` (D, Dprime, H, HomogD)")))?;
    let (input, image) = if kind == DerivationKind::HomogD {
        let p: HomogPoly = read_poly(poly, Some(VarSet::Projective)).map_err(|e| Failure::Usage(e.to_string()))?;
        let d = homog_d(&p, &params)?;
        (poly_json(&p), poly_json(&d))
    } else {
        let p = affine(poly)?;
        let d = apply_variant(&p, kind, &params)?;
        (poly_json(&p), poly_json(&d))
    };
    let text = image["text"].as_str().unwrap_or_default().to_string();
    let result = json!({ "kind": kind.to_string(), "input": input, "image": image });
    ctx.emit("derive", Some(&params), &result, || format!("{text}\n"));
    Ok(())
}

fn run_bracket(ctx: &Ctx, u: &str, v: &str) -> Result<(), Failure> {
    let params = ctx.params()?;
    let (u, v) = (affine(u)?, affine(v)?);
    let b = rankin_bracket(&u, &v, &Derivation::new(DerivationKind::D, &params))?;
    let weight = b.weight().ok();
    let result = json!({ "u": poly_json(&u), "v": poly_json(&v), "bracket": poly_json(&b), "weight": weight });
    ctx.emit("bracket", Some(&params), &result, || format!("{b}\n"));
    Ok(())
}

fn run_ideal(ctx: &Ctx, cmd: IdealCmd) -> Result<(), Failure> {
    let params = ctx.params()?;
    match cmd {
        IdealCmd::CertifyCase1 => match certify_case_one(&params) {
            Ok(rep) => ctx.emit("ideal certify-case1", Some(&params), &rep, || {
                format!(
                    "H = {}\nK = {}\nRes_y1(H,K) = {}\nRes_y2(H,K) = {}\neta = {}\nK matches the displayed cubic; both resultant identities hold\n",
                    rep.h, rep.k, rep.r1, rep.r2, rep.eta
                )
            }),
            Err(e @ IdealError::IdentityFailed { .. }) => {
                let msg = e.to_string();
                ctx.emit("ideal certify-case1", Some(&params), &json!({ "holds": false, "error": msg }), || format!("FAIL: {msg}\n"));
                return Err(Failure::Identity(msg));
            }
            Err(e) => return Err(e.into()),
        },
        IdealCmd::Stable { gens, search_bound, budget } => {
            let gens: Vec<AffinePoly> = gens.iter().map(|g| affine(g)).collect::<Result<_, _>>()?;
            let cert = if gens.len() == 1 {
                principal_stability(&gens[0], &params)?
            } else {
                certify_stable(&gens, &params, search_bound, budget)?
            };
            ctx.emit("ideal stable", Some(&params), &cert, || {
                let mut s = format!("ideal ({}) is {:?}\n", cert.generators.join(", "), cert.verdict).to_lowercase();
                if cert.verdict == Verdict::Stable {
                    for (g, row) in gens.iter().zip(cert.cofactors()) {
                        let row: Vec<String> = row.iter().map(|c| c.to_string()).collect();
                        let _ = writeln!(s, "D({g}) = [{}] . gens", row.join(", "));
                    }
                }
                s
            });
        }
        IdealCmd::Member { poly, gens, budget } => {
            let p = affine(&poly)?;
            let gens: Vec<AffinePoly> = gens.iter().map(|g| affine(g)).collect::<Result<_, _>>()?;
            let m = membership(&p, &gens, budget)?;
            ctx.emit("ideal member", Some(&params), &m, || {
                let mut s = format!("member: {}\nremainder: {}\n", m.member, m.remainder);
                if let Some(c) = &m.cofactors {
                    let _ = writeln!(s, "cofactors: [{}]", c.join(", "));
                }
                s
            });
        }
        IdealCmd::Kappa => {
            let rep = kappa_report(&params)?;
            ctx.emit("ideal kappa", Some(&params), &rep, || {
                format!(
                    "kappa = {}\nl = {}\nl dehomogenizes to {}kappa\nD(kappa) = ({}) kappa: {}\nkappa in principal ideals: {:?}\nl in lifted ideals: {:?}\n",
                    rep.kappa,
                    rep.l,
                    if rep.l_dehomogenized_sign < 0 { "-" } else { "" },
                    rep.d_kappa_cofactor,
                    rep.d_kappa_holds,
                    rep.kappa_in_principal,
                    rep.l_in_lifts
                )
            });
            let ok = rep.l_dehomogenized_sign != 0
                && rep.d_kappa_holds
                && rep.kappa_in_principal.iter().all(|b| *b)
                && rep.l_in_lifts.iter().all(|b| *b);
            if !ok {
                return Err(Failure::Identity("kappa/l facts fail".into()));
            }
        }
    }
    Ok(())
}

fn run_hyper(ctx: &Ctx, cmd: HyperCmd) -> Result<(), Failure> {
    let params = ctx.params()?;
    let n = ctx.order;
    match cmd {
        HyperCmd::Expand { point } => {
            let pt = ExpansionPoint::parse(&point)
                .ok_or_else(|| Failure::Usage(format!("unknown point `{point}` (0, 1, inf)")))?;
            let names = ["u0", "u0^2", "y0", "y1", "y2"];
            let series: Vec<(String, SeriesJson, String)> = if pt == ExpansionPoint::Zero {
                let z = at_zero(&params, n)?;
                let [y0, y1, y2] = &z.local.y;
                let all = [&z.local.u0, &z.local.u0sq, y0, y1, y2, &z.u1, &z.tau, &z.q];
                names.iter().chain(["u1", "tau", "q"].iter()).zip(all).map(|(k, s)| (k.to_string(), s.to_json(), s.to_string())).collect()
            } else {
                let e = symbolic_at(pt, &params, n)?;
                let [y0, y1, y2] = &e.y;
                let all = [&e.u0, &e.u0sq, y0, y1, y2];
                names.iter().zip(all).map(|(k, s)| (k.to_string(), s.to_json(), s.to_string())).collect()
            };
            let map: serde_json::Map<String, Value> =
                series.iter().map(|(k, j, _)| (k.clone(), serde_json::to_value(j).expect("series serialize"))).collect();
            let result = json!({ "point": pt, "variable": pt.local_variable(), "series": Value::Object(map) });
            ctx.emit("hyper expand", Some(&params), &result, || {
                let mut s = format!("local variable {}\n", pt.local_variable());
                for (k, _, t) in &series {
                    let _ = writeln!(s, "{k} = {t}");
                }
                s
            });
        }
        HyperCmd::Leading => {
            let terms = leading_terms(&params, n)?;
            let ok = terms.iter().all(|t| t.matches);
            ctx.emit("hyper leading", Some(&params), &terms, || {
                let mut s = String::new();
                for t in &terms {
                    let _ = writeln!(
                        s,
                        "[{}] {} at {}: {} x^{} (expected {} x^{})",
                        if t.matches { "ok" } else { "FAIL" },
                        t.function,
                        t.point,
                        t.coefficient,
                        t.exponent,
                        t.expected_coefficient,
                        t.expected_exponent
                    );
                }
                s
            });
            if !ok {
                return Err(Failure::Identity("leading terms differ".into()));
            }
        }
        HyperCmd::Verify { samples } => {
            let plan = match samples {
                None => SamplePlan::default(),
                Some(list) => {
                    let pts: Vec<Complex64> = list
                        .split(',')
                        .map(|z| parse_complex(z).ok_or_else(|| Failure::Usage(format!("cannot parse sample `{z}`"))))
                        .collect::<Result<_, _>>()?;
                    SamplePlan::admissible(&pts, SamplePlan::default().order)
                }
            };
            let formal = formal_checks(&params, n)?;
            let numeric = numeric_checks(&params, &plan)?;
            let ok = numeric.all_pass && formal.iter().all(|c| c.holds);
            let result = json!({ "formal": formal, "numeric": numeric, "all_pass": ok });
            ctx.emit("hyper verify", Some(&params), &result, || {
                let mut s = String::new();
                for c in &formal {
                    let _ = writeln!(s, "[{}] {} (through exponent {})", if c.holds { "ok" } else { "FAIL" }, c.name, c.certified_to);
                }
                for l in &numeric.lines {
                    let _ = writeln!(s, "[{}] {} at {}: {:.2e} (tol {:.0e})", if l.pass { "ok" } else { "FAIL" }, l.check, l.z, l.residual, l.tolerance);
                }
                let _ = writeln!(s, "omega variant: {}", numeric.omega_variant);
                s
            });
            if !ok {
                return Err(Failure::Identity("hypergeometric checks fail".into()));
            }
        }
    }
    Ok(())
}

fn run_ord(ctx: &Ctx, at: &str, poly: Option<String>, series: Option<String>) -> Result<(), Failure> {
    if let Some(series) = series {
        let text = read_arg(&series)?;
        let json: SeriesJson = serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("series JSON: {e}")))?;
        let s = AnySeries::from_json(&json)?;
        let ord = format_rational(&s.ord()?);
        let result = json!({ "ord": ord, "domain": s.domain().name(), "truncation": json.truncation });
        ctx.emit("ord", None, &result, || format!("ord = {ord}\n"));
        return Ok(());
    }
    let params = ctx.params()?;
    let p = affine(&poly.expect("clap requires poly or series"))?;
    let rep = match point(at)? {
        DistPoint::Zero => ord_at_zero(&p, &params, ctx.order)?,
        DistPoint::Generic(z) => {
            let pc: Poly<Complex64> = p.map_coeffs(Complex64::from_rational);
            ord_at_generic(&pc, &params, z, ctx.order)?
        }
    };
    ctx.emit("ord", Some(&params), &rep, || format!("ord at {} = {} (truncation {})\n", rep.point, rep.ord, rep.truncation));
    Ok(())
}

fn run_dist(ctx: &Ctx, at: &str, poly: &str) -> Result<(), Failure> {
    let params = ctx.params()?;
    let u: HomogPoly = read_poly(poly, Some(VarSet::Projective)).map_err(|e| Failure::Usage(e.to_string()))?;
    let rep = log_dist_hypersurface(&u, point(at)?, &params, ctx.order)?;
    ctx.emit("dist", Some(&params), &rep, || format!("-log Dist = {}\n", rep.neg_log_dist));
    Ok(())
}

fn run_audit(ctx: &Ctx, profile: &str, samples: usize) -> Result<(), Failure> {
    let params = ctx.params()?;
    let degs: Vec<u32> = profile
        .split(',')
        .map(|d| d.trim().parse::<u32>())
        .collect::<Result<_, _>>()
        .map_err(|e| Failure::Usage(format!("profile `{profile}`: {e}")))?;
    let profile: [u32; 5] = degs.try_into().map_err(|_| Failure::Usage("profile needs five degrees".into()))?;
    if samples == 0 {
        return Err(Failure::Usage("--samples must be positive".into()));
    }
    let audit = bound_audit(profile, &params, samples, ctx.seed, ctx.order.min(8))?;
    ctx.emit("audit", Some(&params), &audit, || {
        format!(
            "{} of {} samples conclusive ({} exhausted)\nmax ord {} vs M1*M2^4 = {} (M1 = {}, M2 = {}); ratio {:.4e}\nwithin bound: {}\n",
            audit.conclusive, audit.samples, audit.exhausted, audit.max_ord, audit.bound, audit.m1, audit.m2, audit.ratio, audit.within_bound
        )
    });
    if !audit.within_bound {
        return Err(Failure::Identity(format!("max ord {} exceeds {}", audit.max_ord, audit.bound)));
    }
    Ok(())
}

fn run_verify(ctx: &Ctx, cmd: VerifyCmd) -> Result<(), Failure> {
    let VerifyCmd::All = cmd;
    let params = ctx.params()?;
    let rep = verify_all(&params, ctx.order)?;
    ctx.emit("verify all", Some(&params), &rep, || {
        let mut s = String::new();
        for l in &rep.lines {
            let _ = write!(s, "[{}] {}: {}", if l.pass { "PASS" } else { "FAIL" }, l.suite, l.check);
            if !l.detail.is_empty() {
                let _ = write!(s, " ({})", l.detail);
            }
            s.push('\n');
        }
        let _ = writeln!(s, "{} passed, {} failed", rep.passed, rep.failed);
        s
    });
    if !rep.all_pass {
        return Err(Failure::Identity(format!("{} checks fail", rep.failed)));
    }
    Ok(())
}

fn order_from_env() -> Result<usize, Failure> {
    match std::env::var(ORDER_ENV) {
        Ok(v) => v.trim().parse().map_err(|_| Failure::Usage(format!("{ORDER_ENV}={v} is not a positive integer"))),
        Err(_) => Ok(DEFAULT_ORDER),
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let order = match cli.global.order {
        Some(n) => n,
        None => order_from_env()?,
    };
    if order == 0 {
        return Err(Failure::Usage("order must be at least 1".into()));
    }
    let ctx = Ctx { emit: cli.global.emit, params_text: cli.global.params, order, seed: cli.global.seed };
    match cli.command {
        Command::Params(cmd) => run_params(&ctx, cmd),
        Command::Derive { kind, poly } => run_derive(&ctx, &kind, &read_arg(&poly)?),
        Command::Bracket { u, v } => run_bracket(&ctx, &read_arg(&u)?, &read_arg(&v)?),
        Command::Ideal(cmd) => run_ideal(&ctx, cmd),
        Command::Hyper(cmd) => run_hyper(&ctx, cmd),
        Command::Ord { at, poly, series } => run_ord(&ctx, &at, poly.map(|p| read_arg(&p)).transpose()?, series),
        Command::Dist { at, poly } => run_dist(&ctx, &at, &read_arg(&poly)?),
        Command::Audit { profile, samples } => run_audit(&ctx, &profile, samples),
        Command::Verify(cmd) => run_verify(&ctx, cmd),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}\n\nUsage: trimult [OPTIONS] <COMMAND>\nFor more information, try '--help'.");
            ExitCode::from(1)
        }
        Err(Failure::Error(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Identity(msg)) => {
            eprintln!("identity check failed: {msg}");
            ExitCode::from(2)
        }
    }
}
