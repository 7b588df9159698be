//! Seeded, randomized property suites in exact arithmetic.
//!
//! Each suite draws its inputs from a ChaCha stream seeded by
//! [`VerifyConfig::seed`], evaluates the cases (in parallel when rayon has
//! more than one worker), and reports the first failing case of every check
//! in input order, so reports do not depend on the thread count.

use crate::barcx::{
    bar_differential, basis_words, chen_pairing, dual_cs, dual_kk, eval_hat_cs, eval_hat_kk,
    shuffle_product, BarElement, BarWord, DgaModel, KkMiddle,
};
use crate::error::{Error, Result};
use crate::goldman::{
    adams, adams_sum, bi_pairing, bi_pairing_with, dehn_twist, goldman_bracket,
    goldman_bracket_with, half_log_squared, kk_action, kk_action_with, kk_derivation,
    kk_derivation_at, LoopSum, PathPairSum, PathSum, StandardCurve, StrandOrder,
};
use crate::magnus::{
    adams_series_check, expand_loop_sum, gr_necklace_bracket, is_symplectic, kvi_check,
    necklace_project, resolution_check, solve_symplectic, transported_bracket, CyclicSeries,
    MagnusExpansion,
};
use crate::surface::{cyclic_normal_form, FreeWord, Letter, LoopClass, Path, SurfaceSpec};
use crate::tensoralg::{
    derivation_exp, q, rank, Derivation, Gen, Rational, SparseMatrix, TensorSeries, TensorSquare,
};
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// Names accepted by [`run_suite`].
pub const SUITES: [&str; 10] = [
    "jacobi",
    "leibniz",
    "perturbation",
    "gr-bracket",
    "adams",
    "bar",
    "kvi",
    "twist",
    "resolution",
    "bipair",
];

/// Surface, seed and sizes for a suite run. `cases` and `trunc` fall back
/// to per-suite defaults when unset.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyConfig {
    pub genus: usize,
    pub boundaries: usize,
    pub seed: u64,
    pub cases: Option<usize>,
    pub trunc: Option<u32>,
}

impl VerifyConfig {
    pub fn new(genus: usize, boundaries: usize, seed: u64) -> Self {
        VerifyConfig {
            genus,
            boundaries,
            seed,
            cases: None,
            trunc: None,
        }
    }

    pub fn spec(&self) -> Result<SurfaceSpec> {
        SurfaceSpec::new(self.genus, self.boundaries)
    }

    fn cases_or(&self, default: usize) -> usize {
        self.cases.unwrap_or(default)
    }

    fn trunc_or(&self, default: u32) -> u32 {
        self.trunc.unwrap_or(default)
    }

    fn rng(&self, salt: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed ^ salt.wrapping_mul(0x9E37_79B9_7F4A_7C15))
    }
}

/// Outcome of one named property inside a suite.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub name: String,
    pub cases: usize,
    pub passed: bool,
    /// Human-readable dump of the first failing case.
    pub counterexample: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub genus: usize,
    pub boundaries: usize,
    pub seed: u64,
    pub checks: Vec<CheckReport>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&CheckReport> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn summary(&self) -> String {
        let mut out = format!(
            "suite {} on (g={}, b={}) seed {}: {}\n",
            self.suite,
            self.genus,
            self.boundaries,
            self.seed,
            if self.passed() { "PASS" } else { "FAIL" }
        );
        for c in &self.checks {
            out.push_str(&format!(
                "  {:<28} {:>5} cases  {}\n",
                c.name,
                c.cases,
                if c.passed { "ok" } else { "FAILED" }
            ));
            if let Some(ce) = &c.counterexample {
                out.push_str(&format!("    counterexample: {ce}\n"));
            }
        }
        out
    }
}

/// Runs `f` on every input; `Ok(Some(msg))` marks a failing case.
fn run_cases<T, F>(name: &str, inputs: Vec<T>, f: F) -> Result<CheckReport>
where
    T: Sync,
    F: Fn(&T) -> Result<Option<String>> + Sync,
{
    let outcomes: Vec<Result<Option<String>>> = inputs.par_iter().map(&f).collect();
    let mut counterexample = None;
    for o in outcomes {
        if let Some(msg) = o? {
            counterexample = Some(msg);
            break;
        }
    }
    Ok(CheckReport {
        name: name.to_string(),
        cases: inputs.len(),
        passed: counterexample.is_none(),
        counterexample,
    })
}

fn single(name: &str, outcome: Option<String>) -> CheckReport {
    CheckReport {
        name: name.to_string(),
        cases: 1,
        passed: outcome.is_none(),
        counterexample: outcome,
    }
}

/// Runs the suite called `name`.
pub fn run_suite(name: &str, cfg: &VerifyConfig) -> Result<SuiteReport> {
    let checks = match name {
        "jacobi" => jacobi_suite(cfg)?,
        "leibniz" => leibniz_suite(cfg)?,
        "perturbation" => perturbation_suite(cfg)?,
        "gr-bracket" => gr_bracket_suite(cfg)?,
        "adams" => adams_suite(cfg)?,
        "bar" => bar_suite(cfg)?,
        "kvi" => kvi_suite(cfg)?,
        "twist" => twist_suite(cfg)?,
        "resolution" => resolution_suite(cfg)?,
        "bipair" => bipair_suite(cfg)?,
        _ => {
            return Err(Error::usage(format!(
                "unknown suite `{name}` (expected one of {})",
                SUITES.join(", ")
            )))
        }
    };
    Ok(SuiteReport {
        suite: name.to_string(),
        genus: cfg.genus,
        boundaries: cfg.boundaries,
        seed: cfg.seed,
        checks,
    })
}

// ---------------------------------------------------------------------------
// random inputs

fn random_letter(rng: &mut ChaCha8Rng, spec: &SurfaceSpec) -> Letter {
    let g = rng.gen_range(0..spec.rank()) as Gen;
    if rng.gen_bool(0.5) {
        Letter::neg(g)
    } else {
        Letter::pos(g)
    }
}

/// A nonempty reduced word of length at most `max_len`.
pub fn random_word(rng: &mut ChaCha8Rng, spec: &SurfaceSpec, max_len: usize) -> FreeWord {
    loop {
        let len = rng.gen_range(1..=max_len);
        let w = FreeWord::new((0..len).map(|_| random_letter(rng, spec)).collect());
        if !w.is_empty() {
            return w;
        }
    }
}

/// A nontrivial free homotopy class with a representative of length at
/// most `max_len`.
pub fn random_class(rng: &mut ChaCha8Rng, spec: &SurfaceSpec, max_len: usize) -> LoopClass {
    loop {
        let c = cyclic_normal_form(&random_word(rng, spec, max_len));
        if !c.is_trivial() {
            return c;
        }
    }
}

fn random_coeff(rng: &mut ChaCha8Rng) -> Rational {
    let num = [-3i64, -2, -1, 1, 2, 3][rng.gen_range(0..6)];
    let den = [1i64, 1, 2, 3][rng.gen_range(0..4)];
    q(num, den)
}

/// Words of `prod_i (w_i - 1)` with their signs.
fn ideal_words(factors: &[FreeWord]) -> Vec<(FreeWord, Rational)> {
    let k = factors.len();
    (0..1u32 << k)
        .map(|mask| {
            let mut w = FreeWord::empty();
            let mut sign = if (k - mask.count_ones() as usize).is_multiple_of(2) { 1 } else { -1 };
            for (i, f) in factors.iter().enumerate() {
                if mask & (1 << i) != 0 {
                    w = w.mul(f);
                } else if f.is_empty() {
                    sign = 0;
                }
            }
            (w, q(sign, 1))
        })
        .filter(|(_, c)| !c.is_zero())
        .collect()
}

/// `c |prod_{i<k} (alpha_i - 1)|`, an element of the `k`-th filtration step.
fn random_ideal_loop_sum(rng: &mut ChaCha8Rng, spec: &SurfaceSpec, k: usize, max_len: usize) -> LoopSum {
    let factors: Vec<FreeWord> = (0..k).map(|_| random_word(rng, spec, max_len)).collect();
    let c = random_coeff(rng);
    let mut out = LoopSum::zero(*spec);
    for (w, s) in ideal_words(&factors) {
        out.add_term(cyclic_normal_form(&w), s * &c);
    }
    out
}

/// `c · delta · prod_{i<k} (beta_i - 1)` as a path sum between two tags.
fn random_ideal_path_sum(
    rng: &mut ChaCha8Rng,
    spec: &SurfaceSpec,
    from: usize,
    to: usize,
    k: usize,
    max_len: usize,
) -> Result<PathSum> {
    let delta = if rng.gen_bool(0.5) {
        random_word(rng, spec, max_len)
    } else {
        FreeWord::empty()
    };
    let factors: Vec<FreeWord> = (0..k).map(|_| random_word(rng, spec, max_len)).collect();
    let c = random_coeff(rng);
    let mut out = PathSum::zero(*spec, from, to)?;
    for (w, s) in ideal_words(&factors) {
        out.add_term(delta.mul(&w), s * &c);
    }
    Ok(out)
}

fn random_tag(rng: &mut ChaCha8Rng, spec: &SurfaceSpec) -> usize {
    rng.gen_range(0..spec.boundaries())
}

fn random_path_sum(rng: &mut ChaCha8Rng, spec: &SurfaceSpec, from: usize, to: usize, max_len: usize) -> Result<PathSum> {
    let mut out = PathSum::zero(*spec, from, to)?;
    for _ in 0..rng.gen_range(1..=2) {
        let w = if rng.gen_bool(0.1) {
            FreeWord::empty()
        } else {
            random_word(rng, spec, max_len)
        };
        out.add_term(w, random_coeff(rng));
    }
    Ok(out)
}

fn class_sum(spec: &SurfaceSpec, c: &LoopClass) -> LoopSum {
    LoopSum::from_class(*spec, c.clone())
}

fn valuation_or(v: Option<u32>, n: u32) -> u32 {
    v.unwrap_or(n + 1)
}

// ---------------------------------------------------------------------------
// jacobi

fn jacobi_suite(cfg: &VerifyConfig) -> Result<Vec<CheckReport>> {
    let spec = cfg.spec()?;
    let mut rng = cfg.rng(1);
    let triples: Vec<[LoopSum; 3]> = (0..cfg.cases_or(200))
        .map(|_| std::array::from_fn(|_| class_sum(&spec, &random_class(&mut rng, &spec, 8))))
        .collect();
    let antisym = run_cases("antisymmetry", triples.clone(), |[u, v, _]| {
        let s = goldman_bracket(u, v)?.add(&goldman_bracket(v, u)?)?;
        Ok((!s.is_zero()).then(|| format!("u = {}, v = {}: {{u,v}} + {{v,u}} = {}", u.display(), v.display(), s.display())))
    })?;
    let jacobi = run_cases("jacobi", triples, |[u, v, w]| {
        let s = goldman_bracket(u, &goldman_bracket(v, w)?)?
            .add(&goldman_bracket(v, &goldman_bracket(w, u)?)?)?
            .add(&goldman_bracket(w, &goldman_bracket(u, v)?)?)?;
        Ok((!s.is_zero()).then(|| {
            format!(
                "u = {}, v = {}, w = {}: cyclic sum = {}",
                u.display(),
                v.display(),
                w.display(),
                s.display()
            )
        }))
    })?;
    Ok(vec![antisym, jacobi])
}

// ---------------------------------------------------------------------------
// perturbation

fn perturbation_suite(cfg: &VerifyConfig) -> Result<Vec<CheckReport>> {
    let spec = cfg.spec()?;
    let n = cfg.cases_or(200);
    let mut rng = cfg.rng(2);
    let pairs: Vec<(LoopSum, LoopSum)> = (0..n)
        .map(|_| {
            (
                class_sum(&spec, &random_class(&mut rng, &spec, 8)),
                class_sum(&spec, &random_class(&mut rng, &spec, 8)),
            )
        })
        .collect();
    let bracket = run_cases("bracket-orderings", pairs, |(u, v)| {
        let f = goldman_bracket_with(u, v, StrandOrder::Forward)?;
        let r = goldman_bracket_with(u, v, StrandOrder::Reverse)?;
        Ok((f != r).then(|| {
            format!("u = {}, v = {}: forward {} vs reverse {}", u.display(), v.display(), f.display(), r.display())
        }))
    })?;
    let mut kk_inputs = Vec::with_capacity(n);
    for _ in 0..n {
        let u = class_sum(&spec, &random_class(&mut rng, &spec, 8));
        let (a, b) = (random_tag(&mut rng, &spec), random_tag(&mut rng, &spec));
        kk_inputs.push((u, random_path_sum(&mut rng, &spec, a, b, 8)?));
    }
    let kk = run_cases("kk-orderings", kk_inputs, |(u, g)| {
        let f = kk_action_with(u, g, StrandOrder::Forward)?;
        let r = kk_action_with(u, g, StrandOrder::Reverse)?;
        Ok((f != r).then(|| {
            format!("u = {}, gamma = {}: forward {} vs reverse {}", u.display(), g.display(), f.display(), r.display())
        }))
    })?;
    // The bi-pairing needs two path sums with disjoint endpoints, which
    // takes at least two boundary components.
    let mut bp_inputs = Vec::with_capacity(n);
    for _ in 0..n {
        let Some([a, b, c, d]) = disjoint_tags(&mut rng, &spec) else { break };
        bp_inputs.push((
            random_path_sum(&mut rng, &spec, a, b, 6)?,
            random_path_sum(&mut rng, &spec, c, d, 6)?,
        ));
    }
    let bp = run_cases("bipair-orderings", bp_inputs, |(p, r)| {
        let f = bi_pairing_with(p, r, StrandOrder::Forward)?;
        let b = bi_pairing_with(p, r, StrandOrder::Reverse)?;
        Ok((f != b).then(|| format!("p = {}, q = {}: forward {} vs reverse {}", p.display(), r.display(), f.display(), b.display())))
    })?;
    Ok(vec![bracket, kk, bp])
}

// ---------------------------------------------------------------------------
// gr-bracket (with the filtration shift of bracket and action)

fn loop_valuation(u: &LoopSum, theta: &MagnusExpansion) -> u32 {
    valuation_or(expand_loop_sum(u, theta).valuation(), theta.truncation())
}

fn path_valuation(p: &PathSum, theta: &MagnusExpansion) -> u32 {
    valuation_or(theta.expand_path_sum(p).valuation(), theta.truncation())
}

fn same_terms(a: &CyclicSeries, b: &CyclicSeries) -> bool {
    a.terms() == b.terms()
}

fn gr_bracket_suite(cfg: &VerifyConfig) -> Result<Vec<CheckReport>> {
    let spec = cfg.spec()?;
    let n = cfg.trunc_or(6);
    let cases = cfg.cases_or(200);
    let theta = MagnusExpansion::default_for(spec.signature(), n);
    let mut rng = cfg.rng(4);

    let mut brackets = Vec::with_capacity(cases);
    let mut actions = Vec::with_capacity(cases);
    for _ in 0..cases {
        let (ku, kv) = (rng.gen_range(1..=3), rng.gen_range(1..=3));
        brackets.push((
            random_ideal_loop_sum(&mut rng, &spec, ku, 3),
            random_ideal_loop_sum(&mut rng, &spec, kv, 3),
        ));
        let (a, b) = (random_tag(&mut rng, &spec), random_tag(&mut rng, &spec));
        let ku = rng.gen_range(1..=3);
        let u = random_ideal_loop_sum(&mut rng, &spec, ku, 3);
        let kg = rng.gen_range(0..=2);
        actions.push((u, random_ideal_path_sum(&mut rng, &spec, a, b, kg, 3)?));
    }
    let shift_bracket = run_cases("bracket-filtration-shift", brackets, |(u, v)| {
        let (a, b) = (loop_valuation(u, &theta), loop_valuation(v, &theta));
        let got = loop_valuation(&goldman_bracket(u, v)?, &theta);
        let need = (a + b).saturating_sub(2).min(n + 1);
        Ok((got < need).then(|| {
            format!("u = {} (val {a}), v = {} (val {b}): bracket has valuation {got}", u.display(), v.display())
        }))
    })?;
    let shift_kk = run_cases("kk-filtration-shift", actions, |(u, g)| {
        let (a, b) = (loop_valuation(u, &theta), path_valuation(g, &theta));
        let got = path_valuation(&kk_action(u, g)?, &theta);
        let need = (a + b).saturating_sub(2).min(n + 1);
        Ok((got < need).then(|| {
            format!("u = {} (val {a}), gamma = {} (val {b}): action has valuation {got}", u.display(), g.display())
        }))
    })?;

    // Pairs whose lowest components land at or below the truncation.
    let mut pairs = Vec::new();
    let want = cases.div_ceil(2).max(100.min(cases));
    while pairs.len() < want {
        let pick = |rng: &mut ChaCha8Rng| {
            if rng.gen_bool(0.5) {
                class_sum(&spec, &random_class(rng, &spec, 6))
            } else {
                let k = rng.gen_range(1..=2);
                random_ideal_loop_sum(rng, &spec, k, 3)
            }
        };
        let (u, v) = (pick(&mut rng), pick(&mut rng));
        let (eu, ev) = (
            expand_loop_sum(&u, &theta).reduced(),
            expand_loop_sum(&v, &theta).reduced(),
        );
        if let (Some(a), Some(b)) = (eu.valuation(), ev.valuation()) {
            if a + b >= 2 && a + b - 2 <= n {
                pairs.push((u, v, eu, ev, a + b - 2));
            }
        }
    }
    let gr = run_cases("gr-bracket", pairs, |(u, v, eu, ev, d)| {
        let t = transported_bracket(u, v, &theta)?;
        let g = gr_necklace_bracket(&eu.lowest_component(), &ev.lowest_component())?;
        let low_ok = t.valuation().is_none_or(|v| v >= *d);
        let comp_ok = same_terms(&t.component(*d), &g.component(*d));
        Ok((!(low_ok && comp_ok)).then(|| {
            format!(
                "u = {}, v = {}: degree-{d} part of the transported bracket {} vs gr bracket {}",
                u.display(),
                v.display(),
                t.component(*d).display(),
                g.component(*d).display()
            )
        }))
    })?;
    Ok(vec![shift_bracket, shift_kk, gr])
}

// ---------------------------------------------------------------------------
// leibniz (structure of the Kawazumi–Kuno action)

fn flatten_derivation(d: &Derivation, offset: usize, index: &mut BTreeMap<(usize, usize, Vec<Gen>), usize>, row: &mut BTreeMap<usize, Rational>) {
    for (g, im) in d.images().iter().enumerate() {
        for (m, c) in im.terms() {
            let next = index.len();
            let col = *index.entry((offset, g, m.word().to_vec())).or_insert(next);
            row.insert(col, c.clone());
        }
    }
}

fn leibniz_suite(cfg: &VerifyConfig) -> Result<Vec<CheckReport>> {
    let spec = cfg.spec()?;
    let cases = cfg.cases_or(200);
    let n = cfg.trunc_or(5);
    let mut rng = cfg.rng(3);
    let sig = spec.signature();

    let mut products = Vec::with_capacity(cases);
    for _ in 0..cases {
        let u = class_sum(&spec, &random_class(&mut rng, &spec, 6));
        let (a, b, c) = (random_tag(&mut rng, &spec), random_tag(&mut rng, &spec), random_tag(&mut rng, &spec));
        products.push((
            u,
            random_path_sum(&mut rng, &spec, a, b, 5)?,
            random_path_sum(&mut rng, &spec, b, c, 5)?,
        ));
    }
    let leibniz = run_cases("kk-leibniz", products, |(u, g, h)| {
        let lhs = kk_action(u, &g.compose(h)?)?;
        let rhs = kk_action(u, g)?.compose(h)?.add(&g.compose(&kk_action(u, h)?)?)?;
        Ok((lhs != rhs).then(|| {
            format!("u = {}, gamma = {}, delta = {}: {} vs {}", u.display(), g.display(), h.display(), lhs.display(), rhs.display())
        }))
    })?;

    let mut triples = Vec::with_capacity(cases);
    for _ in 0..cases {
        let u = class_sum(&spec, &random_class(&mut rng, &spec, 4));
        let v = class_sum(&spec, &random_class(&mut rng, &spec, 4));
        let (a, b) = (random_tag(&mut rng, &spec), random_tag(&mut rng, &spec));
        triples.push((u, v, random_path_sum(&mut rng, &spec, a, b, 4)?));
    }
    let lie_action = run_cases("lie-action", triples, |(u, v, g)| {
        let lhs = kk_action(&goldman_bracket(u, v)?, g)?;
        let rhs = kk_action(u, &kk_action(v, g)?)?.sub(&kk_action(v, &kk_action(u, g)?)?)?;
        Ok((lhs != rhs).then(|| {
            format!("u = {}, v = {}, gamma = {}: {} vs {}", u.display(), v.display(), g.display(), lhs.display(), rhs.display())
        }))
    })?;

    // The completed identity: derivations with two degrees of headroom,
    // bracketed, then cut back to degree n.
    let completed_cases = (cases / 10).max(4);
    let pairs: Vec<(LoopSum, LoopSum, usize)> = (0..completed_cases)
        .map(|_| {
            let u = class_sum(&spec, &random_class(&mut rng, &spec, 3));
            let v = class_sum(&spec, &random_class(&mut rng, &spec, 3));
            (u, v, random_tag(&mut rng, &spec))
        })
        .collect();
    let completed = run_cases("completed-lie-action", pairs, |(u, v, tag)| {
        let du = kk_derivation(u, *tag, n + 2)?;
        let dv = kk_derivation(v, *tag, n + 2)?;
        let br = du.bracket(&dv)?;
        let lhs = kk_derivation_at(&goldman_bracket(u, v)?, *tag, n)?;
        let bad = (0..sig.num_gens()).find(|&g| br.images()[g].with_truncation(n) != lhs.images()[g]);
        Ok(bad.map(|g| {
            format!(
                "u = {}, v = {}, tag {tag}: generator {} differs",
                u.display(),
                v.display(),
                sig.gen_name(g as Gen)
            )
        }))
    })?;

    let unit = LoopSum::unit(spec);
    let unit_zero = (0..spec.boundaries())
        .map(|tag| kk_derivation_at(&unit, tag, n).map(|d| d == Derivation::zero(sig, n)))
        .collect::<Result<Vec<_>>>()?;
    let unit_check = single(
        "unit-acts-trivially",
        unit_zero.iter().position(|ok| !ok).map(|t| format!("the unit acts nontrivially at tag {t}")),
    );

    let boundary_log = MagnusExpansion::default_for(sig, n + 2)
        .expand(&spec.boundary_word())
        .log()?;
    let samples: Vec<LoopSum> = (0..completed_cases)
        .map(|_| class_sum(&spec, &random_class(&mut rng, &spec, 4)))
        .collect();
    let boundary = run_cases("boundary-log-annihilated", samples, |u| {
        let d = kk_derivation(u, 0, n + 2)?;
        let image = d.apply(&boundary_log)?.with_truncation(n);
        Ok((!image.is_zero()).then(|| format!("u = {}: image {}", u.display(), image.display())))
    })?;

    Ok(vec![
        leibniz,
        lie_action,
        completed,
        unit_check,
        boundary,
        boundary_log_kernel(&spec, n)?,
        kernel_check(cfg, &spec, &mut rng)?,
    ])
}

/// Samples `span{1, |alpha_1|, ..., |alpha_k|}` for distinct random classes
/// and checks that the only combinations whose derivations vanish to
/// degree 4 at every boundary tag are multiples of the unit.
fn kernel_check(cfg: &VerifyConfig, spec: &SurfaceSpec, rng: &mut ChaCha8Rng) -> Result<CheckReport> {
    let n = 4;
    let k = cfg.cases_or(200).div_ceil(25).clamp(3, 8);
    let mut classes = vec![LoopClass::trivial()];
    while classes.len() < k + 1 {
        let c = random_class(rng, spec, 3);
        if !classes.contains(&c) {
            classes.push(c);
        }
    }
    let ders = classes
        .par_iter()
        .map(|c| {
            let u = class_sum(spec, c);
            (0..spec.boundaries())
                .map(|tag| kk_derivation_at(&u, tag, n))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let mut index = BTreeMap::new();
    let mut rows = Vec::new();
    for ds in &ders {
        let mut row = BTreeMap::new();
        for (t, d) in ds.iter().enumerate() {
            flatten_derivation(d, t, &mut index, &mut row);
        }
        rows.push(row);
    }
    let mut a = SparseMatrix::new(index.len());
    for r in rows {
        a.push_row(r);
    }
    let nullity = classes.len() - rank(&a);
    Ok(CheckReport {
        name: "kernel-spanned-by-unit".into(),
        cases: classes.len(),
        passed: nullity == 1,
        counterexample: (nullity != 1).then(|| {
            let names: Vec<String> = classes.iter().map(|c| format!("|{}|", spec.format_word(c.word()))).collect();
            format!("the kernel on span{{{}}} has dimension {nullity}", names.join(", "))
        }),
    })
}

/// `|log c|` for a boundary class `c`, exact modulo the `(m+1)`-st step.
fn log_loop_sum(spec: &SurfaceSpec, c: &LoopClass, m: i64) -> LoopSum {
    let mut out = LoopSum::zero(*spec);
    for k in 0..=m {
        let mut coeff = Rational::zero();
        for j in k.max(1)..=m {
            let sign = if k % 2 == 0 { -1 } else { 1 };
            coeff += q(sign * num_integer::binomial(j, k), j);
        }
        out.add_term(c.power(k), coeff);
    }
    out
}

/// The logarithms of the boundary loops act trivially: the completed
/// kernel contains them, not only the unit.
fn boundary_log_kernel(spec: &SurfaceSpec, n: u32) -> Result<CheckReport> {
    let mut boundaries = vec![cyclic_normal_form(&spec.boundary_word())];
    boundaries.extend((1..=spec.punctures()).map(|k| cyclic_normal_form(&FreeWord::new(vec![Letter::pos(spec.c(k))]))));
    let inputs: Vec<(LoopClass, usize)> = boundaries
        .into_iter()
        .flat_map(|c| (0..spec.boundaries()).map(move |t| (c.clone(), t)))
        .collect();
    run_cases("boundary-logs-annihilated", inputs, |(c, tag)| {
        let u = log_loop_sum(spec, c, 2 * n as i64 + 4);
        let d = kk_derivation_at(&u, *tag, n)?;
        Ok((d != Derivation::zero(spec.signature(), n)).then(|| {
            format!("|log {}| acts nontrivially at tag {tag}", spec.format_word(c.word()))
        }))
    })
}

// ---------------------------------------------------------------------------
// adams

fn adams_suite(cfg: &VerifyConfig) -> Result<Vec<CheckReport>> {
    let spec = cfg.spec()?;
    let cases = cfg.cases_or(200);
    let n = cfg.trunc_or(8);
    let mut rng = cfg.rng(5);
    let sig = spec.signature();

    let comp_inputs: Vec<(LoopClass, u32, u32)> = (0..cases)
        .map(|_| (random_class(&mut rng, &spec, 6), rng.gen_range(0..=4), rng.gen_range(0..=4)))
        .collect();
    let composition = run_cases("composition", comp_inputs, |(c, m, k)| {
        let lhs = adams(*m, &adams(*k, c));
        let rhs = adams(m * k, c);
        Ok((lhs != rhs).then(|| format!("psi_{m} psi_{k} and psi_{} differ on {}", m * k, spec.format_word(c.word()))))
    })?;

    // Filtration inputs: |prod_{i<m} (alpha_i - 1)| with short factors.
    let few = (cases / 4).max(10);
    let filt_inputs: Vec<(LoopSum, usize, u32)> = (0..few)
        .map(|_| {
            let m = rng.gen_range(1..=3);
            (random_ideal_loop_sum(&mut rng, &spec, m, 2), m, rng.gen_range(2..=3))
        })
        .collect();
    let theta = MagnusExpansion::default_for(sig, n);
    let valuations: Vec<(u32, u32)> = filt_inputs
        .par_iter()
        .map(|(u, _, k)| (loop_valuation(u, &theta), loop_valuation(&adams_sum(*k, u), &theta)))
        .collect();
    let with_vals: Vec<_> = filt_inputs.into_iter().zip(valuations).collect();
    let product_bound = run_cases("filtration-product-bound", with_vals.clone(), |((u, m, k), (_, got))| {
        let need = (*m as u32 * k).min(n + 1);
        Ok((*got < need).then(|| {
            format!(
                "u = {} lies in step {m} but psi_{k}(u) has valuation {got} < {need}",
                u.display()
            )
        }))
    })?;
    let preserved = run_cases("filtration-preserved", with_vals, |((u, m, k), (val_u, got))| {
        let need = (*m as u32).max(*val_u).min(n + 1);
        Ok((*got < need).then(|| format!("u = {} (valuation {val_u}): psi_{k}(u) has valuation {got}", u.display())))
    })?;

    let small = MagnusExpansion::default_for(sig, 6);
    let series_inputs: Vec<(LoopClass, u32, u32)> = (0..few)
        .map(|_| (random_class(&mut rng, &spec, 4), rng.gen_range(2..=4), rng.gen_range(1..=4)))
        .collect();
    let scaling = run_cases("symmetric-power-scaling", series_inputs.clone(), |(c, k, j)| {
        let p = small.expand(c.word()).log()?;
        Ok((!adams_series_check(*k, &p, *j)?).then(|| {
            format!("component {j} of |exp({k} log {})| does not scale by {k}^{j}", spec.format_word(c.word()))
        }))
    })?;
    let exp_log = run_cases("adams-exp-log", series_inputs, |(c, k, _)| {
        let p = small.expand(c.word()).log()?;
        let lhs = expand_loop_sum(&class_sum(&spec, &adams(*k, c)), &small);
        let rhs = necklace_project(&p.scale(&q(*k as i64, 1)).exp()?);
        Ok((!same_terms(&lhs, &rhs)).then(|| format!("|Theta(psi_{k} {})| differs from |exp({k} log)|", spec.format_word(c.word()))))
    })?;
    Ok(vec![composition, product_bound, preserved, scaling, exp_log])
}

// ---------------------------------------------------------------------------
// bar

fn random_bar_element(rng: &mut ChaCha8Rng, letters: usize, max_len: usize) -> BarElement {
    let mut e = BarElement::zero();
    for _ in 0..rng.gen_range(1..=2) {
        let len = rng.gen_range(0..=max_len);
        let w: Vec<usize> = (0..len).map(|_| rng.gen_range(1..=letters)).collect();
        e.add_term(BarWord::reduced(w), random_coeff(rng));
    }
    e
}

fn d_squared_exhaustive(name: &str, model: &DgaModel, max_len: usize) -> Result<CheckReport> {
    let mut words = Vec::new();
    for len in 0..=max_len {
        for w in basis_words(model, len) {
            words.push(BarWord::reduced(w.clone()));
            for r in 0..model.dim() {
                words.push(BarWord::circular(w.clone(), r));
            }
        }
    }
    run_cases(name, words, |w| {
        let e = BarElement::from_word(w.clone(), Rational::one());
        let dd = bar_differential(&bar_differential(&e, model)?, model)?;
        Ok((!dd.is_zero()).then(|| format!("d^2 {} = {}", e.display(model), dd.display(model))))
    })
}

fn bar_suite(cfg: &VerifyConfig) -> Result<Vec<CheckReport>> {
    let spec = cfg.spec()?;
    let cases = cfg.cases_or(200);
    let mut rng = cfg.rng(6);
    let open = DgaModel::open_surface(spec.genus(), spec.punctures());
    let letters = spec.rank();
    let mut checks = vec![d_squared_exhaustive("d-squared-open", &open, 4)?];
    if spec.genus() > 0 {
        let closed = DgaModel::closed_surface(spec.genus());
        checks.push(d_squared_exhaustive("d-squared-closed", &closed, 4)?);
    }

    let inputs: Vec<(BarElement, BarElement, FreeWord, FreeWord)> = (0..cases)
        .map(|_| {
            (
                random_bar_element(&mut rng, letters, 3),
                random_bar_element(&mut rng, letters, 3),
                random_word(&mut rng, &spec, 6),
                random_word(&mut rng, &spec, 4),
            )
        })
        .collect();
    checks.push(run_cases("shuffle-multiplicativity", inputs.clone(), |(e1, e2, g, _)| {
        let lhs = chen_pairing(&shuffle_product(e1, e2, &open)?, g, &open)?;
        let rhs = chen_pairing(e1, g, &open)? * chen_pairing(e2, g, &open)?;
        Ok((lhs != rhs).then(|| {
            format!("e1 = {}, e2 = {}, gamma = {}: {lhs} vs {rhs}", e1.display(&open), e2.display(&open), spec.format_word(g))
        }))
    })?);
    checks.push(run_cases("coproduct-path-composition", inputs.clone(), |(e, _, g, h)| {
        let lhs = chen_pairing(e, &g.mul(h), &open)?;
        let mut rhs = Rational::zero();
        for (w, c) in e.terms() {
            for j in 0..=w.letters.len() {
                let left = BarElement::word(w.letters[..j].to_vec());
                let right = BarElement::word(w.letters[j..].to_vec());
                rhs += c * chen_pairing(&left, g, &open)? * chen_pairing(&right, h, &open)?;
            }
        }
        Ok((lhs != rhs).then(|| {
            format!("e = {}, gamma = {}, delta = {}: {lhs} vs {rhs}", e.display(&open), spec.format_word(g), spec.format_word(h))
        }))
    })?);
    let with_letter: Vec<_> = inputs
        .into_iter()
        .map(|(e, _, g, h)| (e, rng.gen_range(1..=letters), g, h))
        .collect();
    checks.push(run_cases("dual-cs-conjugation", with_letter.clone(), |(e, w, g, h)| {
        let f = dual_cs(e, *w, &open)?;
        let base = f.evaluate(g, &open)?;
        let conj = f.evaluate(&h.mul(g).mul(&h.inverse()), &open)?;
        let rot = f.evaluate(&FreeWord::new(g.rotate_letters(1)), &open)?;
        Ok((base != conj || base != rot).then(|| {
            format!("e = {}, gamma = {}, delta = {}: {base}, {conj}, {rot}", e.display(&open), spec.format_word(g), spec.format_word(h))
        }))
    })?);
    let hat_cases: Vec<_> = with_letter.into_iter().take(cases.div_ceil(2)).collect();
    checks.push(run_cases("hat-identity-cs", hat_cases.clone(), |(e, w, g, _)| {
        let lhs = dual_cs(e, *w, &open)?.evaluate(g, &open)?;
        let rhs = eval_hat_cs(e, *w, g, &open)?;
        Ok((lhs != rhs).then(|| format!("e = {}, w = {w}, gamma = {}: {lhs} vs {rhs}", e.display(&open), spec.format_word(g))))
    })?);
    let kk_cases: Vec<_> = hat_cases
        .into_iter()
        .map(|(e, w, g, _)| {
            let ends: [BarElement; 4] = std::array::from_fn(|_| random_bar_element(&mut rng, letters, 2));
            let right = random_bar_element(&mut rng, letters, 2);
            (e, w, g, ends, right)
        })
        .collect();
    checks.push(run_cases("hat-identity-kk", kk_cases, |(left, w, g, ends, right)| {
        let mid = KkMiddle {
            left: left.clone(),
            letter: *w,
            right: right.clone(),
        };
        let e = dual_kk((&ends[0], &ends[1]), (&ends[2], &ends[3]), &mid, &open)?;
        let lhs = chen_pairing(&e, g, &open)?;
        let rhs = eval_hat_kk((&ends[0], &ends[1]), (&ends[2], &ends[3]), &mid, g, &open)?;
        Ok((lhs != rhs).then(|| format!("middle {} w={w} {}, gamma = {}: {lhs} vs {rhs}", left.display(&open), right.display(&open), spec.format_word(g))))
    })?);
    Ok(checks)
}

// ---------------------------------------------------------------------------
// kvi

fn kvi_suite(cfg: &VerifyConfig) -> Result<Vec<CheckReport>> {
    let spec = cfg.spec()?;
    let n = cfg.trunc_or(6);
    let theta = solve_symplectic(spec.genus(), spec.punctures(), n)?;
    let sig = spec.signature();
    let mut checks = vec![single(
        "symplectic-expansion",
        (!is_symplectic(&theta)?).then(|| "the solved expansion is not symplectic".to_string()),
    )];
    let phi = crate::magnus::kvi_automorphism(&theta)?;
    let cert = kvi_check(&phi)?;
    checks.push(single(
        "omega-image",
        (!cert.omega_image_matches)
            .then(|| format!("Phi(omega) differs from the target from degree {:?}", cert.discrepancy_degree)),
    ));
    checks.push(single(
        "gr-identity",
        (!cert.gr_identity).then(|| "Phi is not the identity on the associated graded".to_string()),
    ));
    checks.push(single(
        "hopf",
        (!cert.primitive_images).then(|| "some generator image is not primitive".to_string()),
    ));
    let mut conj_failure = None;
    for (k, lam) in cert.zk_conjugators.iter().enumerate() {
        let z = TensorSeries::generator(sig, n, sig.z(k + 1));
        let ok = match lam {
            Some(l) => {
                let (e, einv) = (l.exp()?, l.scale(&-Rational::one()).exp()?);
                l.is_primitive() && e.is_group_like() && &(&e * &z) * &einv == *phi.image(sig.z(k + 1))
            }
            None => false,
        };
        if !ok && conj_failure.is_none() {
            conj_failure = Some(format!("Phi(z_{}) is not a verified group-like conjugate", k + 1));
        }
    }
    checks.push(single("boundary-conjugates", conj_failure));
    Ok(checks)
}

// ---------------------------------------------------------------------------
// twist

fn twist_suite(cfg: &VerifyConfig) -> Result<Vec<CheckReport>> {
    let spec = cfg.spec()?;
    let n = cfg.trunc_or(5);
    let sig = spec.signature();
    let theta = MagnusExpansion::default_for(sig, n);
    let curves: Vec<StandardCurve> = (1..=spec.genus())
        .flat_map(|j| [StandardCurve::A(j), StandardCurve::B(j)])
        .collect();
    let formula = run_cases("twist-formula", curves.clone(), |curve| {
        let l = half_log_squared(spec, &curve.class(&spec), n as usize + 2);
        let sub = derivation_exp(&kk_derivation_at(&l, 0, n)?)?;
        for g in 0..sig.num_gens() as Gen {
            let image = dehn_twist(&spec, *curve, &FreeWord::new(vec![Letter::pos(g)]));
            let target = theta.expand(&image).log()?;
            if sub.image(g) != &target {
                return Ok(Some(format!(
                    "twist about {:?}: generator {} maps to {} instead of {}",
                    curve,
                    sig.gen_name(g),
                    sub.image(g).display(),
                    target.display()
                )));
            }
        }
        Ok(None)
    })?;
    let boundary = spec.boundary_word();
    let fixtures = run_cases("boundary-fixed", curves, |curve| {
        let image = dehn_twist(&spec, *curve, &boundary);
        Ok((image != boundary).then(|| format!("twist about {:?} moves the boundary word to {}", curve, spec.format_word(&image))))
    })?;
    Ok(vec![formula, fixtures])
}

// ---------------------------------------------------------------------------
// resolution

fn resolution_suite(cfg: &VerifyConfig) -> Result<Vec<CheckReport>> {
    let n_max = cfg.trunc_or(6) as usize;
    let report = resolution_check(cfg.genus, n_max)?;
    let rows = report.rows;
    let exact = run_cases("exactness", rows.clone(), |r| {
        Ok((!r.passed()).then(|| format!("{r:?}")))
    })?;
    let mut checks = vec![exact];
    if cfg.genus == 1 {
        checks.push(run_cases("genus-one-dimensions", rows, |r| {
            Ok((r.dim_a_n != r.n as u128 + 1).then(|| format!("dim A_{} = {} (expected {})", r.n, r.dim_a_n, r.n + 1)))
        })?);
    }
    Ok(checks)
}

// ---------------------------------------------------------------------------
// bipair

fn add_pairs(a: &PathPairSum, b: &PathPairSum) -> PathPairSum {
    let mut out = a.clone();
    for ((l, r), c) in b.terms() {
        out.add_term(l.clone(), r.clone(), c.clone());
    }
    out
}

fn pair_valuation(s: &PathPairSum, theta: &MagnusExpansion) -> u32 {
    let mut total = TensorSquare::zero(theta.truncation());
    for ((l, r), c) in s.terms() {
        let t = TensorSquare::tensor(&theta.expand(&l.word).scale(c), &theta.expand(&r.word));
        total = total.add(&t);
    }
    let v = total.terms().keys().map(|(a, b)| a.weight() + b.weight()).min();
    valuation_or(v, theta.truncation())
}

fn disjoint_tags(rng: &mut ChaCha8Rng, spec: &SurfaceSpec) -> Option<[usize; 4]> {
    let b = spec.boundaries();
    if b < 2 {
        return None;
    }
    for _ in 0..64 {
        let t: [usize; 4] = std::array::from_fn(|_| rng.gen_range(0..b));
        if t[0] != t[2] && t[0] != t[3] && t[1] != t[2] && t[1] != t[3] {
            return Some(t);
        }
    }
    None
}

fn bipair_suite(cfg: &VerifyConfig) -> Result<Vec<CheckReport>> {
    let spec = cfg.spec()?;
    let cases = cfg.cases_or(200);
    let n = cfg.trunc_or(6);
    let mut rng = cfg.rng(7);
    let theta = MagnusExpansion::default_for(spec.signature(), n);
    let mut checks = Vec::new();

    let mut lin = Vec::new();
    let mut shift = Vec::new();
    for _ in 0..cases {
        let Some([a, b, c, d]) = disjoint_tags(&mut rng, &spec) else { break };
        lin.push((
            random_path_sum(&mut rng, &spec, a, b, 5)?,
            random_path_sum(&mut rng, &spec, a, b, 5)?,
            random_path_sum(&mut rng, &spec, c, d, 5)?,
            random_coeff(&mut rng),
        ));
        let (kp, kq) = (rng.gen_range(0..=2), rng.gen_range(0..=2));
        shift.push((
            random_ideal_path_sum(&mut rng, &spec, a, b, kp, 3)?,
            random_ideal_path_sum(&mut rng, &spec, c, d, kq, 3)?,
        ));
    }
    checks.push(run_cases("bilinearity", lin, |(p1, p2, r, c)| {
        let lhs = bi_pairing(&p1.add(&p2.scale(c))?, r)?;
        let rhs = add_pairs(&bi_pairing(p1, r)?, &bi_pairing(p2, r)?.scale(c));
        let lhs2 = bi_pairing(r, &p1.add(&p2.scale(c))?)?;
        let rhs2 = add_pairs(&bi_pairing(r, p1)?, &bi_pairing(r, p2)?.scale(c));
        Ok((lhs != rhs || lhs2 != rhs2).then(|| {
            format!("p1 = {}, p2 = {}, q = {}, c = {c}", p1.display(), p2.display(), r.display())
        }))
    })?);
    checks.push(run_cases("degree-shift", shift, |(p, r)| {
        let (a, b) = (path_valuation(p, &theta), path_valuation(r, &theta));
        let got = pair_valuation(&bi_pairing(p, r)?, &theta);
        let need = (a + b).saturating_sub(2).min(n + 1);
        Ok((got < need).then(|| format!("p = {} (val {a}), q = {} (val {b}): result has valuation {got}", p.display(), r.display())))
    })?);

    // Straight chords between tails never meet unless their ends interleave
    // around the vertex.
    let ribbon = crate::surface::ribbon_structure(&spec);
    let mut configs = Vec::new();
    let b = spec.boundaries();
    for t in 0..b.pow(4) {
        let tags = [t % b, (t / b) % b, (t / b / b) % b, t / b / b / b];
        let [a, bb, c, d] = tags;
        if [a, bb].iter().any(|x| *x == c || *x == d) {
            continue;
        }
        let pos = tags.map(|x| ribbon.tail_pos(x));
        let inside = |x: usize| {
            let (lo, hi) = (pos[0].min(pos[1]), pos[0].max(pos[1]));
            lo < x && x < hi
        };
        if inside(pos[2]) != inside(pos[3]) {
            continue;
        }
        configs.push(tags);
    }
    checks.push(run_cases("non-crossing-vanishes", configs, |[a, bb, c, d]| {
        let p = PathSum::from_path(spec, &Path::new(&spec, *a, *bb, FreeWord::empty())?)?;
        let r = PathSum::from_path(spec, &Path::new(&spec, *c, *d, FreeWord::empty())?)?;
        let out = bi_pairing(&p, &r)?;
        Ok((!out.is_zero()).then(|| format!("chords {a}->{bb} and {c}->{d}: {}", out.display())))
    })?);

    let example = (|| -> Result<Option<String>> {
        let sp = SurfaceSpec::new(0, 4)?;
        let p = PathSum::parse(sp, 0, 2, "1")?;
        let r = PathSum::parse(sp, 1, 3, "1")?;
        let got = bi_pairing(&p, &r)?;
        let mut want = PathPairSum::zero(sp).with_twist(1);
        want.add_term(
            Path::new(&sp, 0, 3, FreeWord::empty())?,
            Path::new(&sp, 1, 2, FreeWord::empty())?,
            -Rational::one(),
        );
        Ok((got != want).then(|| format!("got {}, expected {}", got.display(), want.display())))
    })()?;
    checks.push(single("sphere-four-holes-example", example));
    Ok(checks)
}
