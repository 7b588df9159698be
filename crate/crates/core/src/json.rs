//! Versioned JSON documents for everything the command line reads or
//! writes. Every document carries `"schema": "v1"`; rationals are strings
//! `"p/q"`, words use the surface token syntax, and all lists are in the
//! canonical order of the underlying sums so output is byte-stable.

use crate::barcx::{BarElement, BarWord, DgaModel, Vector};
use crate::error::{Error, Result};
use crate::goldman::{LoopSum, PathPairSum, PathSum, TraceEntry};
use crate::magnus::{CyclicSeries, KviCertificate, MagnusExpansion, ResolutionReport, ResolutionRow};
use crate::surface::{cyclic_normal_form, Path, SurfaceSpec};
use crate::verify::{CheckReport, SuiteReport};
use crate::tensoralg::{fmt_rational, parse_rational, Gen, Monomial, Rational, Signature, TensorSeries};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

pub const SCHEMA: &str = "v1";

/// A value with a JSON document form.
pub trait Persist: Sized {
    type Doc: Serialize + DeserializeOwned;

    fn to_doc(&self) -> Self::Doc;

    fn from_doc(doc: Self::Doc) -> Result<Self>;

    fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_doc()).expect("documents always serialize")
    }

    fn from_json(text: &str) -> Result<Self> {
        Self::from_doc(parse_doc(text)?)
    }
}

/// Parses any document type, mapping serde errors to parse errors.
pub fn parse_doc<T: DeserializeOwned>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse {
        position: e.column(),
        message: format!("line {}: {e}", e.line()),
    })
}

fn check_schema(s: &str) -> Result<()> {
    if s == SCHEMA {
        Ok(())
    } else {
        Err(Error::usage(format!("unsupported schema `{s}`, expected `{SCHEMA}`")))
    }
}

fn schema() -> String {
    SCHEMA.to_string()
}

fn rat(s: &str) -> Result<Rational> {
    parse_rational(s)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignatureDoc {
    pub g: usize,
    pub n: usize,
}

impl From<Signature> for SignatureDoc {
    fn from(s: Signature) -> Self {
        SignatureDoc {
            g: s.genus,
            n: s.punctures,
        }
    }
}

impl From<&SignatureDoc> for Signature {
    fn from(d: &SignatureDoc) -> Self {
        Signature::new(d.g, d.n)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceDoc {
    pub g: usize,
    pub b: usize,
}

impl From<SurfaceSpec> for SurfaceDoc {
    fn from(s: SurfaceSpec) -> Self {
        SurfaceDoc {
            g: s.genus(),
            b: s.boundaries(),
        }
    }
}

impl SurfaceDoc {
    fn spec(&self) -> Result<SurfaceSpec> {
        SurfaceSpec::new(self.g, self.b)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonomialTerm {
    pub word: Vec<String>,
    pub coeff: String,
}

fn monomial_terms<'a>(
    sig: Signature,
    terms: impl Iterator<Item = (&'a Monomial, &'a Rational)>,
) -> Vec<MonomialTerm> {
    terms
        .map(|(m, c)| MonomialTerm {
            word: m.word().iter().map(|&g| sig.gen_name(g)).collect(),
            coeff: fmt_rational(c),
        })
        .collect()
}

fn parse_monomial(sig: &Signature, word: &[String]) -> Result<Monomial> {
    let gens = word
        .iter()
        .map(|t| sig.parse_gen(t))
        .collect::<Result<Vec<Gen>>>()?;
    Ok(Monomial::new(sig, gens))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TensorSeriesDoc {
    pub schema: String,
    pub signature: SignatureDoc,
    pub truncation: u32,
    pub terms: Vec<MonomialTerm>,
}

impl Persist for TensorSeries {
    type Doc = TensorSeriesDoc;

    fn to_doc(&self) -> TensorSeriesDoc {
        let sig = self.signature();
        TensorSeriesDoc {
            schema: schema(),
            signature: sig.into(),
            truncation: self.truncation(),
            terms: monomial_terms(sig, self.terms().iter()),
        }
    }

    fn from_doc(doc: TensorSeriesDoc) -> Result<Self> {
        check_schema(&doc.schema)?;
        let sig = Signature::from(&doc.signature);
        let mut s = TensorSeries::zero(sig, doc.truncation);
        for t in &doc.terms {
            s.add_term(parse_monomial(&sig, &t.word)?, rat(&t.coeff)?);
        }
        Ok(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CyclicSeriesDoc {
    pub schema: String,
    pub signature: SignatureDoc,
    pub truncation: u32,
    pub twist: i32,
    pub terms: Vec<MonomialTerm>,
}

impl Persist for CyclicSeries {
    type Doc = CyclicSeriesDoc;

    fn to_doc(&self) -> CyclicSeriesDoc {
        let sig = self.signature();
        CyclicSeriesDoc {
            schema: schema(),
            signature: sig.into(),
            truncation: self.truncation(),
            twist: self.twist(),
            terms: monomial_terms(sig, self.terms().iter()),
        }
    }

    fn from_doc(doc: CyclicSeriesDoc) -> Result<Self> {
        check_schema(&doc.schema)?;
        let sig = Signature::from(&doc.signature);
        let mut s = CyclicSeries::zero(sig, doc.truncation).with_twist(doc.twist);
        for t in &doc.terms {
            s.add_term(&parse_monomial(&sig, &t.word)?, rat(&t.coeff)?);
        }
        Ok(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WordTerm {
    pub word: String,
    pub coeff: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LoopSumDoc {
    pub schema: String,
    pub surface: SurfaceDoc,
    pub twist: i32,
    pub terms: Vec<WordTerm>,
}

impl Persist for LoopSum {
    type Doc = LoopSumDoc;

    fn to_doc(&self) -> LoopSumDoc {
        let spec = self.spec();
        LoopSumDoc {
            schema: schema(),
            surface: spec.into(),
            twist: self.twist(),
            terms: self
                .terms()
                .iter()
                .map(|(k, c)| WordTerm {
                    word: spec.format_word(k.word()),
                    coeff: fmt_rational(c),
                })
                .collect(),
        }
    }

    fn from_doc(doc: LoopSumDoc) -> Result<Self> {
        check_schema(&doc.schema)?;
        let spec = doc.surface.spec()?;
        let mut s = LoopSum::zero(spec).with_twist(doc.twist);
        for t in &doc.terms {
            let w = spec.parse_word(&t.word)?;
            s.add_term(cyclic_normal_form(&w), rat(&t.coeff)?);
        }
        Ok(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathSumDoc {
    pub schema: String,
    pub surface: SurfaceDoc,
    pub from: usize,
    pub to: usize,
    pub twist: i32,
    pub terms: Vec<WordTerm>,
}

impl Persist for PathSum {
    type Doc = PathSumDoc;

    fn to_doc(&self) -> PathSumDoc {
        let spec = self.spec();
        PathSumDoc {
            schema: schema(),
            surface: spec.into(),
            from: self.from_tag(),
            to: self.to_tag(),
            twist: self.twist(),
            terms: self
                .terms()
                .iter()
                .map(|(w, c)| WordTerm {
                    word: spec.format_word(w),
                    coeff: fmt_rational(c),
                })
                .collect(),
        }
    }

    fn from_doc(doc: PathSumDoc) -> Result<Self> {
        check_schema(&doc.schema)?;
        let spec = doc.surface.spec()?;
        let mut s = PathSum::zero(spec, doc.from, doc.to)?.with_twist(doc.twist);
        for t in &doc.terms {
            s.add_term(spec.parse_word(&t.word)?, rat(&t.coeff)?);
        }
        Ok(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathDoc {
    pub from: usize,
    pub to: usize,
    pub word: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathPairTerm {
    pub left: PathDoc,
    pub right: PathDoc,
    pub coeff: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathPairSumDoc {
    pub schema: String,
    pub surface: SurfaceDoc,
    pub twist: i32,
    pub terms: Vec<PathPairTerm>,
}

impl Persist for PathPairSum {
    type Doc = PathPairSumDoc;

    fn to_doc(&self) -> PathPairSumDoc {
        let spec = self.spec();
        let path = |p: &Path| PathDoc {
            from: p.from,
            to: p.to,
            word: spec.format_word(&p.word),
        };
        PathPairSumDoc {
            schema: schema(),
            surface: spec.into(),
            twist: self.twist(),
            terms: self
                .terms()
                .iter()
                .map(|((l, r), c)| PathPairTerm {
                    left: path(l),
                    right: path(r),
                    coeff: fmt_rational(c),
                })
                .collect(),
        }
    }

    fn from_doc(doc: PathPairSumDoc) -> Result<Self> {
        check_schema(&doc.schema)?;
        let spec = doc.surface.spec()?;
        let path = |p: &PathDoc| Path::new(&spec, p.from, p.to, spec.parse_word(&p.word)?);
        let mut s = PathPairSum::zero(spec).with_twist(doc.twist);
        for t in &doc.terms {
            s.add_term(path(&t.left)?, path(&t.right)?, rat(&t.coeff)?);
        }
        Ok(s)
    }
}

/// Series body without its own schema tag, for nesting.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesBody {
    pub terms: Vec<MonomialTerm>,
}

fn series_body(s: &TensorSeries) -> SeriesBody {
    SeriesBody {
        terms: monomial_terms(s.signature(), s.terms().iter()),
    }
}

fn series_from_body(sig: Signature, trunc: u32, b: &SeriesBody) -> Result<TensorSeries> {
    let mut s = TensorSeries::zero(sig, trunc);
    for t in &b.terms {
        s.add_term(parse_monomial(&sig, &t.word)?, rat(&t.coeff)?);
    }
    Ok(s)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MagnusExpansionDoc {
    pub schema: String,
    pub signature: SignatureDoc,
    pub truncation: u32,
    /// Generator token of the free group (`a1`, `b1`, `c1`, …) to the
    /// series of its image.
    pub images: BTreeMap<String, SeriesBody>,
}

fn group_token(sig: Signature, g: Gen) -> String {
    let g = g as usize;
    if g < sig.genus {
        format!("a{}", g + 1)
    } else if g < 2 * sig.genus {
        format!("b{}", g - sig.genus + 1)
    } else {
        format!("c{}", g - 2 * sig.genus + 1)
    }
}

impl Persist for MagnusExpansion {
    type Doc = MagnusExpansionDoc;

    fn to_doc(&self) -> MagnusExpansionDoc {
        let sig = self.signature();
        MagnusExpansionDoc {
            schema: schema(),
            signature: sig.into(),
            truncation: self.truncation(),
            images: self
                .images()
                .iter()
                .enumerate()
                .map(|(g, s)| (group_token(sig, g as Gen), series_body(s)))
                .collect(),
        }
    }

    fn from_doc(doc: MagnusExpansionDoc) -> Result<Self> {
        check_schema(&doc.schema)?;
        let sig = Signature::from(&doc.signature);
        let images = (0..sig.num_gens())
            .map(|g| {
                let tok = group_token(sig, g as Gen);
                let body = doc
                    .images
                    .get(&tok)
                    .ok_or_else(|| Error::usage(format!("missing image of {tok}")))?;
                series_from_body(sig, doc.truncation, body)
            })
            .collect::<Result<Vec<_>>>()?;
        if doc.images.len() != sig.num_gens() {
            return Err(Error::usage("unexpected generator in expansion images"));
        }
        MagnusExpansion::from_images(images)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KviCertificateDoc {
    pub schema: String,
    pub signature: SignatureDoc,
    pub passed: bool,
    pub omega_image_matches: bool,
    pub discrepancy_degree: Option<u32>,
    pub zk_conjugators: Vec<Option<SeriesBody>>,
    pub gr_identity: bool,
    pub primitive_images: bool,
    pub checked_to_degree: u32,
}

/// The certificate document also records the signature, which the
/// certificate itself does not carry.
pub fn kvi_certificate_doc(sig: Signature, c: &KviCertificate) -> KviCertificateDoc {
    KviCertificateDoc {
        schema: schema(),
        signature: sig.into(),
        passed: c.passed(),
        omega_image_matches: c.omega_image_matches,
        discrepancy_degree: c.discrepancy_degree,
        zk_conjugators: c
            .zk_conjugators
            .iter()
            .map(|l| l.as_ref().map(series_body))
            .collect(),
        gr_identity: c.gr_identity,
        primitive_images: c.primitive_images,
        checked_to_degree: c.checked_to_degree,
    }
}

pub fn kvi_certificate_from_doc(doc: &KviCertificateDoc) -> Result<KviCertificate> {
    check_schema(&doc.schema)?;
    let sig = Signature::from(&doc.signature);
    let zk_conjugators = doc
        .zk_conjugators
        .iter()
        .map(|l| {
            l.as_ref()
                .map(|b| series_from_body(sig, doc.checked_to_degree, b))
                .transpose()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(KviCertificate {
        omega_image_matches: doc.omega_image_matches,
        discrepancy_degree: doc.discrepancy_degree,
        zk_conjugators,
        gr_identity: doc.gr_identity,
        primitive_images: doc.primitive_images,
        checked_to_degree: doc.checked_to_degree,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisDoc {
    pub name: String,
    pub degree: u8,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DifferentialEntry {
    pub from: String,
    pub to: String,
    pub coeff: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProductEntry {
    pub left: String,
    pub right: String,
    pub result: String,
    pub coeff: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DgaModelDoc {
    pub schema: String,
    /// Basis element 0 is the unit.
    pub basis: Vec<BasisDoc>,
    /// `d(from)` has coefficient `coeff` on `to`.
    pub differential: Vec<DifferentialEntry>,
    /// Products other than those with the unit.
    pub products: Vec<ProductEntry>,
    /// Values of the augmentation on basis elements where it is nonzero.
    pub augmentation: BTreeMap<String, String>,
}

impl Persist for DgaModel {
    type Doc = DgaModelDoc;

    fn to_doc(&self) -> DgaModelDoc {
        let n = |i: usize| self.name(i).to_string();
        let mut differential = Vec::new();
        let mut products = Vec::new();
        let mut augmentation = BTreeMap::new();
        for i in 0..self.dim() {
            for (k, c) in self.d(i) {
                differential.push(DifferentialEntry {
                    from: n(i),
                    to: n(*k),
                    coeff: fmt_rational(c),
                });
            }
            for j in 1..self.dim() {
                if i == 0 {
                    continue;
                }
                for (k, c) in self.product(i, j) {
                    products.push(ProductEntry {
                        left: n(i),
                        right: n(j),
                        result: n(*k),
                        coeff: fmt_rational(c),
                    });
                }
            }
            let a = self.augmentation(i);
            if *a != Rational::from_integer(0.into()) {
                augmentation.insert(n(i), fmt_rational(a));
            }
        }
        DgaModelDoc {
            schema: schema(),
            basis: (0..self.dim())
                .map(|i| BasisDoc {
                    name: n(i),
                    degree: self.degree(i),
                })
                .collect(),
            differential,
            products,
            augmentation,
        }
    }

    fn from_doc(doc: DgaModelDoc) -> Result<Self> {
        check_schema(&doc.schema)?;
        let names: Vec<String> = doc.basis.iter().map(|b| b.name.clone()).collect();
        let dim = names.len();
        let index = |name: &str| {
            names
                .iter()
                .position(|n| n == name)
                .ok_or_else(|| Error::usage(format!("unknown basis element `{name}`")))
        };
        let mut differential = vec![Vector::new(); dim];
        for e in &doc.differential {
            differential[index(&e.from)?].insert(index(&e.to)?, rat(&e.coeff)?);
        }
        let mut products = vec![vec![Vector::new(); dim]; dim];
        for i in 0..dim {
            products[0][i].insert(i, Rational::from_integer(1.into()));
            products[i][0].insert(i, Rational::from_integer(1.into()));
        }
        for e in &doc.products {
            let (i, j) = (index(&e.left)?, index(&e.right)?);
            if i == 0 || j == 0 {
                return Err(Error::usage("products with the unit are implicit"));
            }
            products[i][j].insert(index(&e.result)?, rat(&e.coeff)?);
        }
        let mut augmentation = vec![Rational::from_integer(0.into()); dim];
        for (name, c) in &doc.augmentation {
            augmentation[index(name)?] = rat(c)?;
        }
        Ok(DgaModel::new(
            names,
            doc.basis.iter().map(|b| b.degree).collect(),
            differential,
            products,
            augmentation,
        )?
        .recognise())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BarTerm {
    pub letters: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub right: Option<String>,
    pub coeff: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BarElementDoc {
    pub schema: String,
    pub terms: Vec<BarTerm>,
}

pub fn bar_element_doc(e: &BarElement, model: &DgaModel) -> BarElementDoc {
    BarElementDoc {
        schema: schema(),
        terms: e
            .terms()
            .iter()
            .map(|(w, c)| BarTerm {
                letters: w.letters.iter().map(|&l| model.name(l).to_string()).collect(),
                right: w.right.map(|r| model.name(r).to_string()),
                coeff: fmt_rational(c),
            })
            .collect(),
    }
}

pub fn bar_element_from_doc(doc: &BarElementDoc, model: &DgaModel) -> Result<BarElement> {
    check_schema(&doc.schema)?;
    let index = |name: &str| {
        model
            .index_of(name)
            .ok_or_else(|| Error::usage(format!("unknown basis element `{name}`")))
    };
    let mut e = BarElement::zero();
    for t in &doc.terms {
        let letters = t.letters.iter().map(|l| index(l)).collect::<Result<Vec<_>>>()?;
        let right = t.right.as_deref().map(index).transpose()?;
        e.add_term(BarWord { letters, right }, rat(&t.coeff)?);
    }
    e.check(model)?;
    Ok(e)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResolutionRowDoc {
    pub genus: usize,
    pub n: usize,
    pub dim_a_n: String,
    pub dim_h_a_n1: String,
    pub dim_a_n2: String,
    pub rank_d2: String,
    pub rank_d1: String,
    pub composite_zero: bool,
    pub d2_injective: bool,
    pub d1_surjective: bool,
    pub exact: bool,
    pub method: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResolutionReportDoc {
    pub schema: String,
    pub passed: bool,
    pub rows: Vec<ResolutionRowDoc>,
}

fn big(s: &str) -> Result<u128> {
    s.parse()
        .map_err(|_| Error::usage(format!("malformed dimension `{s}`")))
}

impl Persist for ResolutionReport {
    type Doc = ResolutionReportDoc;

    fn to_doc(&self) -> ResolutionReportDoc {
        ResolutionReportDoc {
            schema: schema(),
            passed: self.passed(),
            rows: self
                .rows
                .iter()
                .map(|r| ResolutionRowDoc {
                    genus: r.genus,
                    n: r.n,
                    dim_a_n: r.dim_a_n.to_string(),
                    dim_h_a_n1: r.dim_h_a_n1.to_string(),
                    dim_a_n2: r.dim_a_n2.to_string(),
                    rank_d2: r.rank_d2.to_string(),
                    rank_d1: r.rank_d1.to_string(),
                    composite_zero: r.composite_zero,
                    d2_injective: r.d2_injective,
                    d1_surjective: r.d1_surjective,
                    exact: r.exact,
                    method: r.method.to_string(),
                })
                .collect(),
        }
    }

    fn from_doc(doc: ResolutionReportDoc) -> Result<Self> {
        check_schema(&doc.schema)?;
        let rows = doc
            .rows
            .iter()
            .map(|r| {
                let method = match r.method.as_str() {
                    "elimination" => "elimination",
                    "certificate" => "certificate",
                    other => return Err(Error::usage(format!("unknown method `{other}`"))),
                };
                Ok(ResolutionRow {
                    genus: r.genus,
                    n: r.n,
                    dim_a_n: big(&r.dim_a_n)?,
                    dim_h_a_n1: big(&r.dim_h_a_n1)?,
                    dim_a_n2: big(&r.dim_a_n2)?,
                    rank_d2: big(&r.rank_d2)?,
                    rank_d1: big(&r.rank_d1)?,
                    composite_zero: r.composite_zero,
                    d2_injective: r.d2_injective,
                    d1_surjective: r.d1_surjective,
                    exact: r.exact,
                    method,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(ResolutionReport { rows })
    }
}

/// One crossing of the `--trace` output.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceDoc {
    pub first_term: usize,
    pub second_term: usize,
    pub first_passage: usize,
    pub second_passage: usize,
    pub sign: i32,
    pub result: String,
}

pub fn trace_docs(entries: &[TraceEntry]) -> Vec<TraceDoc> {
    entries
        .iter()
        .map(|e| TraceDoc {
            first_term: e.first_term,
            second_term: e.second_term,
            first_passage: e.crossing.first,
            second_passage: e.crossing.second,
            sign: e.crossing.sign,
            result: e.result.clone(),
        })
        .collect()
}

/// Result of a `verify` run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReportDoc {
    pub schema: String,
    pub suite: String,
    pub surface: SurfaceDoc,
    pub seed: u64,
    pub passed: bool,
    pub checks: Vec<CheckReport>,
}

impl Persist for SuiteReport {
    type Doc = SuiteReportDoc;

    fn to_doc(&self) -> SuiteReportDoc {
        SuiteReportDoc {
            schema: schema(),
            suite: self.suite.clone(),
            surface: SurfaceDoc {
                g: self.genus,
                b: self.boundaries,
            },
            seed: self.seed,
            passed: self.passed(),
            checks: self.checks.clone(),
        }
    }

    fn from_doc(doc: SuiteReportDoc) -> Result<Self> {
        check_schema(&doc.schema)?;
        let report = SuiteReport {
            suite: doc.suite,
            genus: doc.surface.g,
            boundaries: doc.surface.b,
            seed: doc.seed,
            checks: doc.checks,
        };
        if report.passed() != doc.passed {
            return Err(Error::usage("`passed` disagrees with the individual checks"));
        }
        Ok(report)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensoralg::q;

    #[test]
    fn tensor_series_layout() {
        let sig = Signature::new(1, 1);
        let s = TensorSeries::from_words(sig, 6, &[(&["x1", "y1"], q(-1, 2))]).unwrap();
        let v: serde_json::Value = serde_json::from_str(&s.to_json()).unwrap();
        assert_eq!(v["schema"], "v1");
        assert_eq!(v["signature"]["g"], 1);
        assert_eq!(v["signature"]["n"], 1);
        assert_eq!(v["truncation"], 6);
        assert_eq!(v["terms"][0]["word"][1], "y1");
        assert_eq!(v["terms"][0]["coeff"], "-1/2");
        assert_eq!(TensorSeries::from_json(&s.to_json()).unwrap(), s);
    }

    #[test]
    fn rejects_other_schema() {
        let sig = Signature::new(1, 0);
        let text = TensorSeries::one(sig, 2).to_json().replace("\"v1\"", "\"v2\"");
        assert!(matches!(TensorSeries::from_json(&text), Err(Error::Usage(_))));
        assert!(matches!(
            TensorSeries::from_json("{"),
            Err(Error::Parse { .. })
        ));
    }

    #[test]
    fn models_round_trip() {
        for m in [DgaModel::closed_surface(2), DgaModel::open_surface(1, 2)] {
            let back = DgaModel::from_json(&m.to_json()).unwrap();
            assert_eq!(back, m);
        }
    }

    #[test]
    fn sums_round_trip() {
        let sp = SurfaceSpec::new(1, 2).unwrap();
        let u = LoopSum::parse(sp, "2*a1 b1 - 1/3*c1").unwrap().with_twist(1);
        assert_eq!(LoopSum::from_json(&u.to_json()).unwrap(), u);
        let p = PathSum::parse(sp, 0, 1, "a1 + b1'").unwrap();
        assert_eq!(PathSum::from_json(&p.to_json()).unwrap(), p);
        let th = MagnusExpansion::default_for(sp.signature(), 3);
        assert_eq!(MagnusExpansion::from_json(&th.to_json()).unwrap(), th);
    }
}
