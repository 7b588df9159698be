//! The combinatorial Chen pairing between bar words of the open-surface
//! model and words in the free group, and the dual Chas–Sullivan and
//! Kawazumi–Kuno formulas.
//!
//! "Integrating" `[w1|…|wr]` along `γ` means taking the coefficient of
//! `x_{i1}…x_{ir}` in `Θ(γ) = Π e^{±x}`, where `ξ_j, η_j, ζ_k` correspond to
//! `x_j, y_j, z_k`. The coefficient is computed by a dynamic programme over
//! the letters of `γ`; no tensor series are formed.
//!
//! The "hat" evaluations rotate or cut `γ` at a point `t` inside a letter
//! and integrate exactly over `t ∈ [0, 1]`, so the letter containing the
//! cut contributes `e^{±(1−t)x}` on one side and `e^{±tx}` on the other.

use super::bar::{BarElement, BarWord};
use super::model::{DgaModel, ModelKind, Vector};
use crate::error::{Error, Result};
use crate::surface::{FreeWord, Letter, LoopClass};
use crate::tensoralg::Rational;
use num_traits::{One, Zero};

/// Polynomial in `t` with rational coefficients, lowest degree first.
#[derive(Debug, Clone, PartialEq)]
struct Poly(Vec<Rational>);

impl Poly {
    fn constant(c: Rational) -> Self {
        Poly(vec![c])
    }

    fn zero() -> Self {
        Poly(Vec::new())
    }

    fn add_assign(&mut self, other: &Poly) {
        if self.0.len() < other.0.len() {
            self.0.resize(other.0.len(), Rational::zero());
        }
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a += b;
        }
    }

    fn mul(&self, other: &Poly) -> Poly {
        if self.0.is_empty() || other.0.is_empty() {
            return Poly::zero();
        }
        let mut out = vec![Rational::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly(out)
    }

    fn scale(&self, c: &Rational) -> Poly {
        Poly(self.0.iter().map(|a| a * c).collect())
    }

    /// `∫_0^1 p(t) dt`.
    fn integrate(&self) -> Rational {
        self.0
            .iter()
            .enumerate()
            .map(|(k, a)| a / Rational::from_integer((k as i64 + 1).into()))
            .sum()
    }
}

/// A letter of `γ` raised to a (possibly `t`-dependent) exponent.
struct Factor {
    gen: usize,
    exponent: Poly,
}

impl Factor {
    fn whole(l: Letter) -> Self {
        Factor {
            gen: l.gen as usize,
            exponent: Poly::constant(Rational::from_integer(l.sign().into())),
        }
    }

    /// `l^t` (`from_start`) or `l^(1-t)`.
    fn part(l: Letter, from_start: bool) -> Self {
        let s = Rational::from_integer(l.sign().into());
        let exponent = if from_start {
            Poly(vec![Rational::zero(), s])
        } else {
            Poly(vec![s.clone(), -s])
        };
        Factor {
            gen: l.gen as usize,
            exponent,
        }
    }
}

/// Coefficient of the monomial `target` in `Π exp(exponent_i · x_{gen_i})`.
fn monomial_coefficient(target: &[usize], factors: &[Factor]) -> Poly {
    let m = target.len();
    let mut f: Vec<Poly> = vec![Poly::zero(); m + 1];
    f[0] = Poly::constant(Rational::one());
    for fac in factors {
        let mut next = f.clone();
        for p in 1..=m {
            // extend by a block target[q..p] of the factor's generator
            let mut power = Poly::constant(Rational::one());
            let mut fact = Rational::one();
            let mut q = p;
            while q > 0 && target[q - 1] == fac.gen {
                q -= 1;
                let len = p - q;
                power = power.mul(&fac.exponent);
                fact *= Rational::from_integer((len as i64).into());
                let term = f[q].mul(&power).scale(&(Rational::one() / &fact));
                next[p].add_assign(&term);
            }
        }
        f = next;
    }
    f.pop().unwrap_or_else(Poly::zero)
}

fn open_rank(model: &DgaModel) -> Result<usize> {
    match model.kind() {
        ModelKind::OpenSurface { genus, punctures } => Ok(2 * genus + punctures),
        _ => Err(Error::usage("the Chen pairing needs the open-surface model")),
    }
}

fn check_word(model: &DgaModel, w: &FreeWord) -> Result<()> {
    let rank = open_rank(model)?;
    if let Some(l) = w.letters().iter().find(|l| l.gen as usize >= rank) {
        return Err(Error::usage(format!(
            "generator {} is not in a free group of rank {rank}",
            l.gen
        )));
    }
    Ok(())
}

fn generators(model: &DgaModel, letters: &[usize]) -> Result<Vec<usize>> {
    letters
        .iter()
        .map(|&l| {
            model
                .generator_of(l)
                .ok_or_else(|| Error::usage(format!("{} is not a degree-one letter", model.name(l))))
        })
        .collect()
}

/// Pairing of reduced words with the factor sequence; circular terms pair
/// through the value `ε(c)` of their coefficient at the base point.
fn pair_factors(model: &DgaModel, e: &BarElement, factors: &[Factor]) -> Result<Poly> {
    let mut total = Poly::zero();
    for (w, c) in e.terms() {
        let weight = match w.right {
            None => c.clone(),
            Some(r) => c * model.augmentation(r),
        };
        if weight.is_zero() {
            continue;
        }
        let target = generators(model, &w.letters)?;
        total.add_assign(&monomial_coefficient(&target, factors).scale(&weight));
    }
    Ok(total)
}

/// `⟨e, γ⟩`: the coefficient pairing with `Θ(γ)`.
pub fn chen_pairing(e: &BarElement, w: &FreeWord, model: &DgaModel) -> Result<Rational> {
    check_word(model, w)?;
    e.check(model)?;
    let factors: Vec<Factor> = w.letters().iter().map(|&l| Factor::whole(l)).collect();
    Ok(pair_factors(model, e, &factors)?.integrate())
}

/// A function on free homotopy classes given by a bar element paired with
/// any representative loop.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassFunction {
    pub element: BarElement,
}

impl ClassFunction {
    pub fn evaluate(&self, w: &FreeWord, model: &DgaModel) -> Result<Rational> {
        chen_pairing(&self.element, w, model)
    }

    pub fn evaluate_class(&self, c: &LoopClass, model: &DgaModel) -> Result<Rational> {
        self.evaluate(c.word(), model)
    }
}

fn check_letter(model: &DgaModel, w: usize) -> Result<usize> {
    open_rank(model)?;
    model
        .generator_of(w)
        .ok_or_else(|| Error::usage(format!("letter index {w} is not a degree-one letter")))
}

fn reduced_terms(e: &BarElement) -> Result<impl Iterator<Item = (&Vec<usize>, &Rational)>> {
    if e.is_circular() {
        return Err(Error::usage("expected a reduced bar element"));
    }
    Ok(e.terms().iter().map(|(w, c)| (&w.letters, c)))
}

/// `Σ_j [w_{j+1}|…|w_r|w|w_1|…|w_j]` for each term `[w_1|…|w_r]`.
pub fn dual_cs(e: &BarElement, w: usize, model: &DgaModel) -> Result<ClassFunction> {
    check_letter(model, w)?;
    e.check(model)?;
    let mut out = BarElement::zero();
    for (letters, c) in reduced_terms(e)? {
        let r = letters.len();
        for j in 0..=r {
            let mut v = letters[j..].to_vec();
            v.push(w);
            v.extend_from_slice(&letters[..j]);
            out.add_term(BarWord::reduced(v), c.clone());
        }
    }
    Ok(ClassFunction { element: out })
}

fn letter_weight(l: Letter, gen: usize) -> Rational {
    if l.gen as usize == gen {
        Rational::from_integer(l.sign().into())
    } else {
        Rational::zero()
    }
}

/// `Σ_p ⟨w, γ_p⟩ ∫ Σ_j ⟨[w1..wj], suffix_p(t)⟩ ⟨[w_{j+1}..wr], prefix_p(t)⟩ dt`:
/// the rotated loop starting inside letter `p` of `γ`, split into the
/// part after the cut and the part before it.
pub fn eval_hat_cs(e: &BarElement, w: usize, gamma: &FreeWord, model: &DgaModel) -> Result<Rational> {
    let gen = check_letter(model, w)?;
    check_word(model, gamma)?;
    e.check(model)?;
    let letters = gamma.letters();
    let mut total = Rational::zero();
    for (p, &l) in letters.iter().enumerate() {
        let lw = letter_weight(l, gen);
        if lw.is_zero() {
            continue;
        }
        let mut suffix = vec![Factor::part(l, false)];
        suffix.extend(letters[p + 1..].iter().map(|&x| Factor::whole(x)));
        let mut prefix: Vec<Factor> = letters[..p].iter().map(|&x| Factor::whole(x)).collect();
        prefix.push(Factor::part(l, true));
        let mut inner = Poly::zero();
        for (ws, c) in reduced_terms(e)? {
            let target = generators(model, ws)?;
            for j in 0..=target.len() {
                let a = monomial_coefficient(&target[..j], &suffix);
                let b = monomial_coefficient(&target[j..], &prefix);
                inner.add_assign(&a.mul(&b).scale(c));
            }
        }
        total += lw * inner.integrate();
    }
    Ok(total)
}

/// The middle argument of [`dual_kk`]: `Σ left ⊗ w ⊗ right`.
#[derive(Debug, Clone)]
pub struct KkMiddle {
    pub left: BarElement,
    pub letter: usize,
    pub right: BarElement,
}

fn middle_element(m: &KkMiddle) -> Result<BarElement> {
    let mut out = BarElement::zero();
    for (l, cl) in reduced_terms(&m.left)? {
        for (r, cr) in reduced_terms(&m.right)? {
            let mut v = l.clone();
            v.push(m.letter);
            v.extend_from_slice(r);
            out.add_term(BarWord::reduced(v), cl * cr);
        }
    }
    Ok(out)
}

/// `[w1|…|wj|w|w_{j+1}|…|wr] + ε(I0) J0 − ε(J1) I1`.
pub fn dual_kk(
    i0j0: (&BarElement, &BarElement),
    i1j1: (&BarElement, &BarElement),
    middle: &KkMiddle,
    model: &DgaModel,
) -> Result<BarElement> {
    check_letter(model, middle.letter)?;
    for e in [i0j0.0, i0j0.1, i1j1.0, i1j1.1, &middle.left, &middle.right] {
        e.check(model)?;
        let _ = reduced_terms(e)?;
    }
    let mid = middle_element(middle)?;
    Ok(mid
        .add(&i0j0.1.scale(&i0j0.0.augmentation()))
        .sub(&i1j1.0.scale(&i1j1.1.augmentation())))
}

/// The discrete hat evaluation of [`dual_kk`] on a path word `γ`: the cut
/// point runs through each letter `p`, with the left part paired against
/// the path up to the cut and the right part against the rest.
pub fn eval_hat_kk(
    i0j0: (&BarElement, &BarElement),
    i1j1: (&BarElement, &BarElement),
    middle: &KkMiddle,
    gamma: &FreeWord,
    model: &DgaModel,
) -> Result<Rational> {
    let gen = check_letter(model, middle.letter)?;
    check_word(model, gamma)?;
    let letters = gamma.letters();
    let mut total = Rational::zero();
    for (p, &l) in letters.iter().enumerate() {
        let lw = letter_weight(l, gen);
        if lw.is_zero() {
            continue;
        }
        let mut before: Vec<Factor> = letters[..p].iter().map(|&x| Factor::whole(x)).collect();
        before.push(Factor::part(l, true));
        let mut after = vec![Factor::part(l, false)];
        after.extend(letters[p + 1..].iter().map(|&x| Factor::whole(x)));
        let a = pair_factors(model, &middle.left, &before)?;
        let b = pair_factors(model, &middle.right, &after)?;
        total += lw * a.mul(&b).integrate();
    }
    total += i0j0.0.augmentation() * chen_pairing(i0j0.1, gamma, model)?;
    total -= i1j1.1.augmentation() * chen_pairing(i1j1.0, gamma, model)?;
    Ok(total)
}

/// `LHS − RHS` of the relation that moves the 0-form `f` through the bar
/// word `[w1|…|wr]` at `position` (between `w_position` and
/// `w_{position+1}`):
///
/// * `[df] = f(x1) − f(x0)` for `r = 0`,
/// * `[df|w1|…] = [f w1|…] − f(x0)[w1|…]`,
/// * `[…|w_p|df|w_{p+1}|…] = […|w_p|f w_{p+1}|…] − […|w_p f|w_{p+1}|…]`,
/// * `[…|w_r|df] = f(x1)[…|w_r] − […|w_r f]`.
///
/// Both end values of `f` are its augmentation.
pub fn relation_element(
    f: &Vector,
    words: &[usize],
    position: usize,
    model: &DgaModel,
) -> Result<BarElement> {
    if let Some(i) = f.keys().find(|&&i| i >= model.dim() || model.degree(i) != 0) {
        return Err(Error::domain(format!("f has a component of positive degree ({i})")));
    }
    let r = words.len();
    if position > r {
        return Err(Error::usage("relation position beyond the word"));
    }
    BarElement::word(words.to_vec()).check(model)?;
    let eps: Rational = f.iter().map(|(i, c)| c * model.augmentation(*i)).sum();
    let mut out = BarElement::zero();
    // LHS: insert df
    for (k, c) in model.d_vec(f) {
        let mut v = words[..position].to_vec();
        v.push(k);
        v.extend_from_slice(&words[position..]);
        out.add_term(BarWord::reduced(v), c);
    }
    let with_letter = |i: usize, prod: Vector, out: &mut BarElement, s: Rational| {
        for (k, c) in prod {
            let mut v = words.to_vec();
            v[i] = k;
            out.add_term(BarWord::reduced(v), c * &s);
        }
    };
    let unit = |i: usize| Vector::from([(i, Rational::one())]);
    let one = Rational::one();
    if r == 0 {
        out.add_term(BarWord::reduced(Vec::new()), -eps.clone());
        out.add_term(BarWord::reduced(Vec::new()), eps);
        return Ok(out);
    }
    if position < r {
        // + [..|f w_{p+1}|..] moved to the left-hand side
        with_letter(position, model.mul_vec(f, &unit(words[position])), &mut out, -one.clone());
    } else {
        out.add_term(BarWord::reduced(words.to_vec()), -eps.clone());
    }
    if position > 0 {
        with_letter(position - 1, model.mul_vec(&unit(words[position - 1]), f), &mut out, one);
    } else {
        out.add_term(BarWord::reduced(words.to_vec()), eps);
    }
    Ok(out)
}
