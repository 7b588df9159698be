//! Command-line front end: bracket and action calculators, expansion and
//! Kashiwara–Vergne solvers, and the seeded verification suites.
//!
//! Exit codes: 0 on success, 1 when a checked property fails, 2 on usage
//! or parse errors.

use clap::{Args, Parser, Subcommand};
use std::io::Write;
use goldman_forge::barcx::{bar_differential, chen_pairing, BarElement, DgaModel};
use goldman_forge::goldman::{
    adams_sum, bi_pairing_with, bipair_trace, bracket_trace, dehn_twist, goldman_bracket_with,
    half_log_squared, kk_action_with, kk_derivation_at, kk_trace, LoopSum, PathSum, StandardCurve,
    StrandOrder,
};
use goldman_forge::json::{bar_element_doc, kvi_certificate_doc, trace_docs, Persist, SCHEMA};
use goldman_forge::magnus::{
    expand_loop_sum, is_symplectic, kvi_automorphism, kvi_check, resolution_check,
    solve_symplectic, MagnusExpansion,
};
use goldman_forge::surface::{FreeWord, Letter, SurfaceSpec};
use goldman_forge::tensoralg::{derivation_exp, fmt_rational, Gen};
use goldman_forge::verify::{run_suite, VerifyConfig, SUITES};
use goldman_forge::{Error, Result};
use serde_json::{json, Value};
use std::process::ExitCode;

const DEFAULT_SEED: u64 = 20240607;

#[derive(Parser, Debug)]
#[command(name = "goldman-forge", version, about = "Exact Goldman bracket, Kawazumi–Kuno action and their completions")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Common {
    /// Genus of the surface.
    #[arg(long, global = true, default_value_t = 1)]
    g: usize,
    /// Number of boundary components (at least one).
    #[arg(long, global = true, default_value_t = 1)]
    b: usize,
    /// Truncation degree; each command has its own default.
    #[arg(long = "N", global = true, value_parser = clap::value_parser!(u32).range(1..))]
    n: Option<u32>,
    /// Seed for randomized sweeps.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Emit a versioned JSON document instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Print every crossing that contributes.
    #[arg(long, global = true)]
    trace: bool,
    /// Resolve crossings with the reversed strand ordering.
    #[arg(long, global = true)]
    reverse: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Goldman bracket {u, v} of two loop sums, e.g. "a1" "2*b1 - a1 b1".
    Bracket { u: String, v: String },
    /// Kawazumi–Kuno action of a loop sum on a path sum between two tags.
    Kk {
        u: String,
        path: String,
        #[arg(long, default_value_t = 0)]
        from: usize,
        #[arg(long, default_value_t = 0)]
        to: usize,
    },
    /// Bi-pairing of two path sums with disjoint endpoints.
    Bipair {
        p: String,
        q: String,
        /// Endpoints of the first path sum, as FROM,TO.
        #[arg(long, default_value = "0,1", value_parser = parse_pair)]
        p_ends: (usize, usize),
        /// Endpoints of the second path sum, as FROM,TO.
        #[arg(long, default_value = "2,3", value_parser = parse_pair)]
        q_ends: (usize, usize),
    },
    /// Magnus expansion of a word and the necklace of its class.
    Expand { word: String },
    /// Adams operation psi_n (n-th power of each loop) on a loop sum.
    Adams { n: u32, u: String },
    /// Solve for a symplectic expansion.
    SolveExpansion,
    /// Solve, build Phi = Theta ∘ theta^-1 and certify the KV-type conditions.
    KviCheck,
    /// Bar differential of an element and, for the open model, its Chen
    /// pairing with a word, e.g. "[xi1|eta1] - [zeta1]" "a1 b1".
    BarPair {
        element: String,
        word: Option<String>,
        /// `open` or `closed`, or a path to a model JSON document.
        #[arg(long, default_value = "open")]
        model: String,
    },
    /// Exactness of the surface-algebra resolution in each degree.
    Resolution {
        #[arg(long, default_value_t = 6)]
        max_n: usize,
    },
    /// Compare exp of the KK derivation of (log alpha)^2 / 2 with the
    /// action of the standard Dehn twists on every generator.
    TwistCheck {
        /// Surface as G,B (overrides --g/--b).
        #[arg(long, value_parser = parse_pair)]
        surface: Option<(usize, usize)>,
    },
    /// Run one of the property suites.
    Verify {
        #[arg(value_parser = clap::builder::PossibleValuesParser::new(SUITES))]
        suite: String,
        /// Number of random cases (suite default when omitted).
        #[arg(long)]
        cases: Option<usize>,
    },
}

fn parse_pair(s: &str) -> std::result::Result<(usize, usize), String> {
    let (a, b) = s.split_once(',').ok_or_else(|| format!("expected A,B, got `{s}`"))?;
    let p = |t: &str| t.trim().parse::<usize>().map_err(|_| format!("`{t}` is not a number"));
    Ok((p(a)?, p(b)?))
}

/// What a command produced: its text and JSON renderings and whether every
/// property it checked held.
struct Outcome {
    text: String,
    json: Value,
    passed: bool,
}

impl Outcome {
    fn ok(text: String, json: Value) -> Self {
        Outcome { text, json, passed: true }
    }
}

fn doc<T: Persist>(x: &T) -> Value {
    serde_json::to_value(x.to_doc()).expect("documents always serialize")
}

fn order(c: &Common) -> StrandOrder {
    if c.reverse {
        StrandOrder::Reverse
    } else {
        StrandOrder::Forward
    }
}

fn valuation_text(v: Option<u32>, n: u32) -> String {
    v.map_or(format!(">{n}"), |v| v.to_string())
}

fn trace_line(e: &goldman_forge::goldman::TraceEntry) -> String {
    format!(
        "  terms ({}, {}) passages ({}, {}) sign {:+}: {}\n",
        e.first_term, e.second_term, e.crossing.first, e.crossing.second, e.crossing.sign, e.result
    )
}

fn loop_valuation(u: &LoopSum, theta: &MagnusExpansion) -> Option<u32> {
    expand_loop_sum(u, theta).valuation()
}

fn cmd_bracket(c: &Common, u: &str, v: &str) -> Result<Outcome> {
    let spec = SurfaceSpec::new(c.g, c.b)?;
    let n = c.n.unwrap_or(4);
    let (u, v) = (LoopSum::parse(spec, u)?, LoopSum::parse(spec, v)?);
    let r = goldman_bracket_with(&u, &v, order(c))?;
    let theta = MagnusExpansion::default_for(spec.signature(), n);
    let e = expand_loop_sum(&r, &theta);
    let vals = [loop_valuation(&u, &theta), loop_valuation(&v, &theta), e.valuation()];
    let mut text = format!(
        "{{u, v}} = {}\nnecklace to degree {n}: {}\nvaluations: u {}, v {}, bracket {} (twist {})\n",
        r.display(),
        e.display(),
        valuation_text(vals[0], n),
        valuation_text(vals[1], n),
        valuation_text(vals[2], n),
        r.twist()
    );
    let mut json = json!({
        "schema": SCHEMA,
        "command": "bracket",
        "truncation": n,
        "u": doc(&u),
        "v": doc(&v),
        "result": doc(&r),
        "expansion": doc(&e),
        "valuations": {"u": vals[0], "v": vals[1], "result": vals[2]},
    });
    if c.trace {
        let t = bracket_trace(&u, &v, order(c))?;
        for e in &t {
            text.push_str(&trace_line(e));
        }
        json["trace"] = serde_json::to_value(trace_docs(&t)).expect("serializable");
    }
    Ok(Outcome::ok(text, json))
}

fn cmd_kk(c: &Common, u: &str, path: &str, from: usize, to: usize) -> Result<Outcome> {
    let spec = SurfaceSpec::new(c.g, c.b)?;
    let u = LoopSum::parse(spec, u)?;
    let p = PathSum::parse(spec, from, to, path)?;
    let r = kk_action_with(&u, &p, order(c))?;
    let mut text = format!("kappa(u ⊗ gamma) = {}\n", r.display());
    let mut json = json!({
        "schema": SCHEMA,
        "command": "kk",
        "u": doc(&u),
        "path": doc(&p),
        "result": doc(&r),
    });
    if c.trace {
        let t = kk_trace(&u, &p, order(c))?;
        for e in &t {
            text.push_str(&trace_line(e));
        }
        json["trace"] = serde_json::to_value(trace_docs(&t)).expect("serializable");
    }
    Ok(Outcome::ok(text, json))
}

fn cmd_bipair(c: &Common, p: &str, q: &str, pe: (usize, usize), qe: (usize, usize)) -> Result<Outcome> {
    let spec = SurfaceSpec::new(c.g, c.b)?;
    let p = PathSum::parse(spec, pe.0, pe.1, p)?;
    let q = PathSum::parse(spec, qe.0, qe.1, q)?;
    let r = bi_pairing_with(&p, &q, order(c))?;
    let mut text = format!("bipair(p, q) = {}\n", r.display());
    let mut json = json!({
        "schema": SCHEMA,
        "command": "bipair",
        "p": doc(&p),
        "q": doc(&q),
        "result": doc(&r),
    });
    if c.trace {
        let t = bipair_trace(&p, &q, order(c))?;
        for e in &t {
            text.push_str(&trace_line(e));
        }
        json["trace"] = serde_json::to_value(trace_docs(&t)).expect("serializable");
    }
    Ok(Outcome::ok(text, json))
}

fn cmd_expand(c: &Common, word: &str) -> Result<Outcome> {
    let spec = SurfaceSpec::new(c.g, c.b)?;
    let n = c.n.unwrap_or(4);
    let w = spec.parse_word(word)?;
    let theta = MagnusExpansion::default_for(spec.signature(), n);
    let s = theta.expand(&w);
    let l = s.log()?;
    let neck = expand_loop_sum(&LoopSum::from_word(spec, &w), &theta);
    let text = format!(
        "Theta({}) = {}\nlog Theta = {}\nnecklace = {}\n",
        spec.format_word(&w),
        s.display(),
        l.display(),
        neck.display()
    );
    let json = json!({
        "schema": SCHEMA,
        "command": "expand",
        "word": spec.format_word(&w),
        "expansion": doc(&s),
        "log": doc(&l),
        "necklace": doc(&neck),
    });
    Ok(Outcome::ok(text, json))
}

fn cmd_adams(c: &Common, k: u32, u: &str) -> Result<Outcome> {
    let spec = SurfaceSpec::new(c.g, c.b)?;
    let n = c.n.unwrap_or(4);
    let u = LoopSum::parse(spec, u)?;
    let r = adams_sum(k, &u);
    let theta = MagnusExpansion::default_for(spec.signature(), n);
    let (vu, vr) = (loop_valuation(&u, &theta), loop_valuation(&r, &theta));
    let text = format!(
        "psi_{k}(u) = {}\nvaluations: u {}, psi_{k}(u) {}\n",
        r.display(),
        valuation_text(vu, n),
        valuation_text(vr, n)
    );
    let json = json!({
        "schema": SCHEMA,
        "command": "adams",
        "n": k,
        "u": doc(&u),
        "result": doc(&r),
        "valuations": {"u": vu, "result": vr},
    });
    Ok(Outcome::ok(text, json))
}

fn cmd_solve(c: &Common) -> Result<Outcome> {
    let spec = SurfaceSpec::new(c.g, c.b)?;
    let n = c.n.unwrap_or(6);
    let theta = solve_symplectic(spec.genus(), spec.punctures(), n)?;
    let ok = is_symplectic(&theta)?;
    let mut text = String::new();
    for (g, im) in theta.images().iter().enumerate() {
        text.push_str(&format!("{} ↦ {}\n", spec.gen_name(g as Gen), im.display()));
    }
    text.push_str(&format!("symplectic: {ok}\n"));
    let json = json!({
        "schema": SCHEMA,
        "command": "solve-expansion",
        "expansion": doc(&theta),
        "symplectic": ok,
    });
    Ok(Outcome { text, json, passed: ok })
}

fn cmd_kvi(c: &Common) -> Result<Outcome> {
    let spec = SurfaceSpec::new(c.g, c.b)?;
    let n = c.n.unwrap_or(6);
    let theta = solve_symplectic(spec.genus(), spec.punctures(), n)?;
    let cert = kvi_check(&kvi_automorphism(&theta)?)?;
    let cdoc = kvi_certificate_doc(spec.signature(), &cert);
    let text = format!(
        "Phi(omega) matches: {}\ngr(Phi) = id: {}\nprimitive images: {}\nboundary conjugators found: {}/{}\nchecked to degree {}\n{}\n",
        cert.omega_image_matches,
        cert.gr_identity,
        cert.primitive_images,
        cert.zk_conjugators.iter().filter(|c| c.is_some()).count(),
        cert.zk_conjugators.len(),
        cert.checked_to_degree,
        if cert.passed() { "PASS" } else { "FAIL" }
    );
    let mut json = serde_json::to_value(&cdoc).expect("serializable");
    json["command"] = json!("kvi-check");
    Ok(Outcome {
        text,
        json,
        passed: cert.passed(),
    })
}

fn load_model(spec: &SurfaceSpec, which: &str) -> Result<DgaModel> {
    match which {
        "open" => Ok(DgaModel::open_surface(spec.genus(), spec.punctures())),
        "closed" => Ok(DgaModel::closed_surface(spec.genus())),
        path => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::usage(format!("cannot read model `{path}`: {e}")))?;
            DgaModel::from_json(&text)
        }
    }
}

fn cmd_bar_pair(c: &Common, element: &str, word: Option<&str>, model: &str) -> Result<Outcome> {
    let spec = SurfaceSpec::new(c.g, c.b)?;
    let m = load_model(&spec, model)?;
    let e = BarElement::parse(&m, element)?;
    let d = bar_differential(&e, &m)?;
    let mut text = format!("e = {}\nd e = {}\n", e.display(&m), d.display(&m));
    let mut json = json!({
        "schema": SCHEMA,
        "command": "bar-pair",
        "element": bar_element_doc(&e, &m),
        "differential": bar_element_doc(&d, &m),
    });
    if let Some(w) = word {
        let w = spec.parse_word(w)?;
        let v = chen_pairing(&e, &w, &m)?;
        text.push_str(&format!("<e, {}> = {}\n", spec.format_word(&w), fmt_rational(&v)));
        json["word"] = json!(spec.format_word(&w));
        json["pairing"] = json!(fmt_rational(&v));
    }
    Ok(Outcome::ok(text, json))
}

fn cmd_resolution(c: &Common, max_n: usize) -> Result<Outcome> {
    let report = resolution_check(c.g, max_n)?;
    let mut text = format!(
        "{:>3} {:>10} {:>12} {:>10} {:>10} {:>10}  {:<11} {}\n",
        "n", "dim A_n", "dim H⊗A_n+1", "dim A_n+2", "rank d2", "rank d1", "method", "exact"
    );
    for r in &report.rows {
        text.push_str(&format!(
            "{:>3} {:>10} {:>12} {:>10} {:>10} {:>10}  {:<11} {}\n",
            r.n, r.dim_a_n, r.dim_h_a_n1, r.dim_a_n2, r.rank_d2, r.rank_d1, r.method, r.passed()
        ));
    }
    let mut json = doc(&report);
    json["command"] = json!("resolution");
    json["genus"] = json!(c.g);
    Ok(Outcome {
        text,
        json,
        passed: report.passed(),
    })
}

fn cmd_twist(c: &Common, surface: Option<(usize, usize)>) -> Result<Outcome> {
    let (g, b) = surface.unwrap_or((c.g, c.b));
    let spec = SurfaceSpec::new(g, b)?;
    let n = c.n.unwrap_or(5);
    let sig = spec.signature();
    let theta = MagnusExpansion::default_for(sig, n);
    let boundary = spec.boundary_word();
    let mut rows = Vec::new();
    let mut text = String::new();
    let mut passed = true;
    for j in 1..=g {
        for (name, curve) in [(format!("a{j}"), StandardCurve::A(j)), (format!("b{j}"), StandardCurve::B(j))] {
            let l = half_log_squared(spec, &curve.class(&spec), n as usize + 2);
            let sub = derivation_exp(&kk_derivation_at(&l, 0, n)?)?;
            let fixes = dehn_twist(&spec, curve, &boundary) == boundary;
            passed &= fixes;
            text.push_str(&format!("t_{name}: boundary word fixed: {fixes}\n"));
            for gen in 0..sig.num_gens() as Gen {
                let image = dehn_twist(&spec, curve, &FreeWord::new(vec![Letter::pos(gen)]));
                let equal = *sub.image(gen) == theta.expand(&image).log()?;
                passed &= equal;
                text.push_str(&format!(
                    "  {} ↦ {}: {}\n",
                    spec.gen_name(gen),
                    spec.format_word(&image),
                    if equal { "equal" } else { "DIFFERENT" }
                ));
                rows.push(json!({
                    "curve": name,
                    "generator": spec.gen_name(gen),
                    "image": spec.format_word(&image),
                    "equal": equal,
                    "boundary_fixed": fixes,
                }));
            }
        }
    }
    let json = json!({
        "schema": SCHEMA,
        "command": "twist-check",
        "surface": {"g": g, "b": b},
        "truncation": n,
        "passed": passed,
        "rows": rows,
    });
    Ok(Outcome { text, json, passed })
}

fn cmd_verify(c: &Common, suite: &str, cases: Option<usize>) -> Result<Outcome> {
    let cfg = VerifyConfig {
        cases,
        trunc: c.n,
        ..VerifyConfig::new(c.g, c.b, c.seed)
    };
    let report = run_suite(suite, &cfg)?;
    Ok(Outcome {
        text: report.summary(),
        json: doc(&report),
        passed: report.passed(),
    })
}

fn run(cli: &Cli) -> Result<Outcome> {
    let c = &cli.common;
    match &cli.command {
        Command::Bracket { u, v } => cmd_bracket(c, u, v),
        Command::Kk { u, path, from, to } => cmd_kk(c, u, path, *from, *to),
        Command::Bipair { p, q, p_ends, q_ends } => cmd_bipair(c, p, q, *p_ends, *q_ends),
        Command::Expand { word } => cmd_expand(c, word),
        Command::Adams { n, u } => cmd_adams(c, *n, u),
        Command::SolveExpansion => cmd_solve(c),
        Command::KviCheck => cmd_kvi(c),
        Command::BarPair { element, word, model } => cmd_bar_pair(c, element, word.as_deref(), model),
        Command::Resolution { max_n } => cmd_resolution(c, *max_n),
        Command::TwistCheck { surface } => cmd_twist(c, *surface),
        Command::Verify { suite, cases } => cmd_verify(c, suite, *cases),
    }
}

fn configure_threads() {
    if let Ok(v) = std::env::var("GOLDMAN_FORGE_THREADS") {
        if let Ok(n) = v.trim().parse::<usize>() {
            if n > 0 {
                // Only fails if a global pool already exists.
                let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    configure_threads();
    match run(&cli) {
        Ok(out) => {
            let body = if cli.common.json {
                serde_json::to_string_pretty(&out.json).expect("serializable") + "\n"
            } else {
                out.text
            };
            // a closed pipe (e.g. `| head`) is not an error worth reporting
            let _ = std::io::stdout().lock().write_all(body.as_bytes());
            if out.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("goldman-forge: {e}");
            match e {
                Error::Internal(_) => ExitCode::from(1),
                _ => ExitCode::from(2),
            }
        }
    }
}
