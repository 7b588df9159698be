//! Free-group words on the standard generators of a surface with boundary,
//! their conjugacy classes, basepoint-tagged paths and the one-vertex
//! ribbon graph that realises the surface.
//!
//! Generators use the same integer ids as the tensor algebra: `a_j` is
//! `j-1`, `b_j` is `g+j-1` and `c_k` is `2g+k-1`.

use crate::error::{Error, Result};
use crate::tensoralg::{Gen, Signature};
use std::fmt;

/// Oriented surface of genus `g` with `b >= 1` boundary components.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SurfaceSpec {
    genus: usize,
    boundaries: usize,
}

impl SurfaceSpec {
    /// Rejects closed surfaces and the disk.
    pub fn new(genus: usize, boundaries: usize) -> Result<Self> {
        if boundaries == 0 {
            return Err(Error::usage("surface needs at least one boundary component"));
        }
        if 2 * genus + boundaries < 2 {
            return Err(Error::usage("the disk has trivial fundamental group"));
        }
        if 2 * genus + boundaries > 4096 {
            return Err(Error::usage("surface too large"));
        }
        Ok(SurfaceSpec { genus, boundaries })
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn boundaries(&self) -> usize {
        self.boundaries
    }

    /// Number of interior punctures `n = b - 1`.
    pub fn punctures(&self) -> usize {
        self.boundaries - 1
    }

    /// Rank of the free fundamental group.
    pub fn rank(&self) -> usize {
        2 * self.genus + self.punctures()
    }

    pub fn euler_characteristic(&self) -> i64 {
        2 - 2 * self.genus as i64 - self.boundaries as i64
    }

    pub fn signature(&self) -> Signature {
        Signature::new(self.genus, self.punctures())
    }

    pub fn a(&self, j: usize) -> Gen {
        (j - 1) as Gen
    }

    pub fn b(&self, j: usize) -> Gen {
        (self.genus + j - 1) as Gen
    }

    pub fn c(&self, k: usize) -> Gen {
        (2 * self.genus + k - 1) as Gen
    }

    pub fn gen_name(&self, gen: Gen) -> String {
        let i = gen as usize;
        if i < self.genus {
            format!("a{}", i + 1)
        } else if i < 2 * self.genus {
            format!("b{}", i - self.genus + 1)
        } else {
            format!("c{}", i - 2 * self.genus + 1)
        }
    }

    pub fn parse_letter(&self, token: &str, position: usize) -> Result<Letter> {
        let bad = |m: &str| Error::Parse {
            position,
            message: format!("{m} `{token}`"),
        };
        let (body, inv) = match token.strip_suffix('\'') {
            Some(b) => (b, true),
            None => (token, false),
        };
        if body.len() < 2 || !body.is_char_boundary(1) {
            return Err(bad("malformed letter"));
        }
        let (head, tail) = body.split_at(1);
        let idx: usize = tail.parse().map_err(|_| bad("malformed letter"))?;
        let gen = match head {
            "a" if idx >= 1 && idx <= self.genus => self.a(idx),
            "b" if idx >= 1 && idx <= self.genus => self.b(idx),
            "c" if idx >= 1 && idx <= self.punctures() => self.c(idx),
            "a" | "b" | "c" => return Err(bad("generator out of range")),
            _ => return Err(bad("unknown generator")),
        };
        Ok(Letter { gen, inv })
    }

    /// Parses whitespace-separated letters such as `a1 b1' c2`. The empty
    /// string and `1` denote the empty word. The result is reduced.
    pub fn parse_word(&self, text: &str) -> Result<FreeWord> {
        let trimmed = text.trim();
        if trimmed.is_empty() || trimmed == "1" {
            return Ok(FreeWord::empty());
        }
        let mut letters = Vec::new();
        let mut offset = 0;
        for token in text.split_whitespace() {
            let position = text[offset..].find(token).map_or(offset, |p| p + offset);
            offset = position + token.len();
            letters.push(self.parse_letter(token, position)?);
        }
        Ok(FreeWord::new(letters))
    }

    pub fn format_word(&self, w: &FreeWord) -> String {
        if w.is_empty() {
            return "1".into();
        }
        w.letters()
            .iter()
            .map(|l| {
                let mut s = self.gen_name(l.gen);
                if l.inv {
                    s.push('\'');
                }
                s
            })
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// The literal word `prod_j a_j b_j a_j^-1 b_j^-1 · prod_k c_k`.
    pub fn boundary_word(&self) -> FreeWord {
        let mut letters = Vec::with_capacity(4 * self.genus + self.punctures());
        for j in 1..=self.genus {
            letters.push(Letter::pos(self.a(j)));
            letters.push(Letter::pos(self.b(j)));
            letters.push(Letter::neg(self.a(j)));
            letters.push(Letter::neg(self.b(j)));
        }
        for k in 1..=self.punctures() {
            letters.push(Letter::pos(self.c(k)));
        }
        FreeWord::new(letters)
    }

    /// Based loop around boundary component `tag`, as a path from and to
    /// that tag: `γ_0` for the outer boundary, `c_k^-1` otherwise.
    pub fn boundary_loop(&self, tag: usize) -> Result<Path> {
        if tag == 0 {
            Path::new(self, 0, 0, self.boundary_word())
        } else {
            Path::new(self, tag, tag, FreeWord::new(vec![Letter::neg(self.c(tag))]))
        }
    }

    pub fn check_word(&self, w: &FreeWord) -> Result<()> {
        if w.letters().iter().any(|l| l.gen as usize >= self.rank()) {
            return Err(Error::usage("word uses a generator outside the surface"));
        }
        Ok(())
    }
}

/// A generator or its inverse. Ordered by generator, positive first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub gen: Gen,
    pub inv: bool,
}

impl Letter {
    pub fn pos(gen: Gen) -> Self {
        Letter { gen, inv: false }
    }

    pub fn neg(gen: Gen) -> Self {
        Letter { gen, inv: true }
    }

    pub fn inverse(self) -> Self {
        Letter {
            gen: self.gen,
            inv: !self.inv,
        }
    }

    pub fn sign(self) -> i32 {
        if self.inv {
            -1
        } else {
            1
        }
    }
}

/// Freely reduced word in the free group.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct FreeWord {
    letters: Vec<Letter>,
}

impl FreeWord {
    /// Builds a word, reducing it.
    pub fn new(letters: Vec<Letter>) -> Self {
        FreeWord {
            letters: reduce_letters(letters),
        }
    }

    pub fn empty() -> Self {
        FreeWord::default()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn mul(&self, other: &FreeWord) -> FreeWord {
        let mut v = self.letters.clone();
        v.extend_from_slice(&other.letters);
        FreeWord::new(v)
    }

    pub fn inverse(&self) -> FreeWord {
        FreeWord {
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }

    pub fn pow(&self, k: i64) -> FreeWord {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut out = FreeWord::empty();
        for _ in 0..k.unsigned_abs() {
            out = out.mul(&base);
        }
        out
    }

    /// Rotation starting at position `i`: `w[i..] w[..i]` (not reduced).
    pub fn rotate_letters(&self, i: usize) -> Vec<Letter> {
        let i = if self.letters.is_empty() { 0 } else { i % self.letters.len() };
        let mut v = self.letters[i..].to_vec();
        v.extend_from_slice(&self.letters[..i]);
        v
    }

    /// Exponent sum of each generator.
    pub fn abelianization(&self, rank: usize) -> Vec<i64> {
        let mut v = vec![0i64; rank];
        for l in &self.letters {
            v[l.gen as usize] += l.sign() as i64;
        }
        v
    }
}

/// Free reduction of a letter sequence.
pub fn reduce(w: &FreeWord) -> FreeWord {
    FreeWord::new(w.letters.clone())
}

fn reduce_letters(letters: Vec<Letter>) -> Vec<Letter> {
    let mut out: Vec<Letter> = Vec::with_capacity(letters.len());
    for l in letters {
        if out.last() == Some(&l.inverse()) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

/// Conjugacy class of a free-group element: the lexicographically least
/// rotation of the cyclically reduced word.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct LoopClass {
    word: FreeWord,
}

impl LoopClass {
    pub fn trivial() -> Self {
        LoopClass::default()
    }

    pub fn word(&self) -> &FreeWord {
        &self.word
    }

    pub fn is_trivial(&self) -> bool {
        self.word.is_empty()
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    /// Class of the `k`-th power.
    pub fn power(&self, k: i64) -> LoopClass {
        cyclic_normal_form(&self.word.pow(k))
    }

    pub fn inverse(&self) -> LoopClass {
        cyclic_normal_form(&self.word.inverse())
    }
}

pub fn cyclic_normal_form(w: &FreeWord) -> LoopClass {
    let mut l = reduce_letters(w.letters.clone());
    // cyclic reduction
    let mut start = 0;
    let mut end = l.len();
    while end - start >= 2 && l[start] == l[end - 1].inverse() {
        start += 1;
        end -= 1;
    }
    l = l[start..end].to_vec();
    let n = l.len();
    let mut best = l.clone();
    for r in 1..n {
        let mut cand = l[r..].to_vec();
        cand.extend_from_slice(&l[..r]);
        if cand < best {
            best = cand;
        }
    }
    LoopClass {
        word: FreeWord { letters: best },
    }
}

/// Homotopy class of a path from basepoint tag `from` to tag `to`. The
/// word is read along the fixed connecting arcs: the path leaves the tail
/// of `from`, runs through the letters and enters the tail of `to`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    pub from: usize,
    pub to: usize,
    pub word: FreeWord,
}

impl Path {
    pub fn new(spec: &SurfaceSpec, from: usize, to: usize, word: FreeWord) -> Result<Self> {
        if from >= spec.boundaries() || to >= spec.boundaries() {
            return Err(Error::usage(format!(
                "basepoint tag out of range for {} boundary components",
                spec.boundaries()
            )));
        }
        spec.check_word(&word)?;
        Ok(Path { from, to, word })
    }

    /// Concatenation `self · other`, defined when endpoints match.
    pub fn compose(&self, other: &Path) -> Result<Path> {
        if self.to != other.from {
            return Err(Error::usage("path endpoints do not match"));
        }
        Ok(Path {
            from: self.from,
            to: other.to,
            word: self.word.mul(&other.word),
        })
    }

    pub fn inverse(&self) -> Path {
        Path {
            from: self.to,
            to: self.from,
            word: self.word.inverse(),
        }
    }
}

/// A half-edge at the single vertex of the ribbon graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Slot {
    /// Start of the band of a generator.
    Out(Gen),
    /// End of the band of a generator.
    In(Gen),
    /// Tail carrying a tangential basepoint.
    Tail(usize),
}

/// One-vertex ribbon graph: one band per generator and one tail per
/// boundary component, with a fixed counterclockwise cyclic order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RibbonStructure {
    spec: SurfaceSpec,
    slots: Vec<Slot>,
    out_pos: Vec<usize>,
    in_pos: Vec<usize>,
    tail_pos: Vec<usize>,
}

/// Boundary face: the word read along it, starting just after its tail.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Face {
    pub tail: usize,
    pub word: FreeWord,
}

impl RibbonStructure {
    pub fn new(spec: &SurfaceSpec) -> Self {
        // Clockwise listing: the outer tail, one handle pattern per genus
        // and one corridor with its tail per puncture. The stored order is
        // its mirror image.
        let mut cw = vec![Slot::Tail(0)];
        for j in 1..=spec.genus() {
            cw.push(Slot::Out(spec.a(j)));
            cw.push(Slot::In(spec.b(j)));
            cw.push(Slot::In(spec.a(j)));
            cw.push(Slot::Out(spec.b(j)));
        }
        for k in 1..=spec.punctures() {
            cw.push(Slot::Out(spec.c(k)));
            cw.push(Slot::Tail(k));
            cw.push(Slot::In(spec.c(k)));
        }
        let mut slots = vec![Slot::Tail(0)];
        slots.extend(cw[1..].iter().rev().copied());
        let mut out_pos = vec![0; spec.rank()];
        let mut in_pos = vec![0; spec.rank()];
        let mut tail_pos = vec![0; spec.boundaries()];
        for (i, s) in slots.iter().enumerate() {
            match *s {
                Slot::Out(g) => out_pos[g as usize] = i,
                Slot::In(g) => in_pos[g as usize] = i,
                Slot::Tail(t) => tail_pos[t] = i,
            }
        }
        RibbonStructure {
            spec: *spec,
            slots,
            out_pos,
            in_pos,
            tail_pos,
        }
    }

    pub fn spec(&self) -> &SurfaceSpec {
        &self.spec
    }

    /// Half-edges in counterclockwise order.
    pub fn slots(&self) -> &[Slot] {
        &self.slots
    }

    pub fn out_pos(&self, gen: Gen) -> usize {
        self.out_pos[gen as usize]
    }

    pub fn in_pos(&self, gen: Gen) -> usize {
        self.in_pos[gen as usize]
    }

    pub fn tail_pos(&self, tag: usize) -> usize {
        self.tail_pos[tag]
    }

    /// Position where a strand reading `letter` leaves the vertex.
    pub fn start_pos(&self, letter: Letter) -> usize {
        if letter.inv {
            self.in_pos(letter.gen)
        } else {
            self.out_pos(letter.gen)
        }
    }

    /// Position where a strand reading `letter` returns to the vertex.
    pub fn end_pos(&self, letter: Letter) -> usize {
        if letter.inv {
            self.out_pos(letter.gen)
        } else {
            self.in_pos(letter.gen)
        }
    }

    /// Boundary faces, found by following each band and then turning to
    /// the clockwise-previous half-edge. Each face carries one tail.
    pub fn faces(&self) -> Vec<Face> {
        let m = self.slots.len();
        let mut visited = vec![false; m];
        let mut faces = Vec::new();
        for start in 0..m {
            if visited[start] || matches!(self.slots[start], Slot::Tail(_)) {
                continue;
            }
            let mut letters = Vec::new();
            let mut tails = Vec::new();
            let mut h = start;
            loop {
                visited[h] = true;
                let (letter, arrive) = match self.slots[h] {
                    Slot::Out(g) => (Letter::pos(g), self.in_pos(g)),
                    Slot::In(g) => (Letter::neg(g), self.out_pos(g)),
                    Slot::Tail(_) => unreachable!(),
                };
                letters.push(letter);
                let mut next = (arrive + m - 1) % m;
                while let Slot::Tail(t) = self.slots[next] {
                    tails.push((t, letters.len()));
                    next = (next + m - 1) % m;
                }
                h = next;
                if h == start {
                    break;
                }
            }
            let (tail, at) = tails.first().copied().unwrap_or((usize::MAX, 0));
            let rotated = letters[at % letters.len()..]
                .iter()
                .chain(&letters[..at % letters.len()])
                .copied()
                .collect::<Vec<_>>();
            faces.push(Face {
                tail,
                word: FreeWord { letters: rotated },
            });
        }
        faces.sort_by_key(|f| f.tail);
        faces
    }
}

pub fn ribbon_structure(spec: &SurfaceSpec) -> RibbonStructure {
    RibbonStructure::new(spec)
}

impl fmt::Display for SurfaceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(g={}, b={})", self.genus, self.boundaries)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(g: usize, b: usize) -> SurfaceSpec {
        SurfaceSpec::new(g, b).unwrap()
    }

    #[test]
    fn validity() {
        assert!(SurfaceSpec::new(0, 1).is_err());
        assert!(SurfaceSpec::new(2, 0).is_err());
        assert!(SurfaceSpec::new(0, 2).is_ok());
        assert!(SurfaceSpec::new(1, 1).is_ok());
        assert!(SurfaceSpec::new(0, 3).is_ok());
    }

    #[test]
    fn reduce_examples() {
        let sp = s(1, 1);
        assert!(sp.parse_word("a1 a1'").unwrap().is_empty());
        assert_eq!(
            sp.parse_word("a1 b1 b1' a1").unwrap(),
            sp.parse_word("a1 a1").unwrap()
        );
        let w = sp.parse_word("a1 b1'").unwrap();
        assert_eq!(reduce(&w), w);
    }

    #[test]
    fn parse_errors_carry_position() {
        let sp = s(1, 2);
        match sp.parse_word("a1  q7") {
            Err(Error::Parse { position, .. }) => assert_eq!(position, 4),
            other => panic!("unexpected {other:?}"),
        }
        assert!(sp.parse_word("a2").is_err());
        assert!(sp.parse_word("c1'").is_ok());
        assert!(sp.parse_word("c2").is_err());
    }

    #[test]
    fn cyclic_normal_form_examples() {
        let sp = s(1, 1);
        let w = |t| sp.parse_word(t).unwrap();
        assert_eq!(cyclic_normal_form(&w("b1 a1 b1'")), cyclic_normal_form(&w("a1")));
        assert_eq!(cyclic_normal_form(&w("a1 b1")), cyclic_normal_form(&w("b1 a1")));
        assert!(cyclic_normal_form(&FreeWord::empty()).is_trivial());
        assert_eq!(cyclic_normal_form(&w("b1 a1")).word(), &w("a1 b1"));
    }

    #[test]
    fn boundary_word_examples() {
        let f = |g, b| {
            let sp = s(g, b);
            sp.format_word(&sp.boundary_word())
        };
        assert_eq!(f(1, 1), "a1 b1 a1' b1'");
        assert_eq!(f(0, 3), "c1 c2");
        assert_eq!(f(2, 1), "a1 b1 a1' b1' a2 b2 a2' b2'");
    }

    #[test]
    fn faces_match_boundary() {
        for g in 0..4 {
            for b in 1..6 {
                let Ok(sp) = SurfaceSpec::new(g, b) else { continue };
                let faces = ribbon_structure(&sp).faces();
                assert_eq!(faces.len(), b);
                assert_eq!(faces[0].tail, 0);
                assert_eq!(faces[0].word, sp.boundary_word());
                for k in 1..b {
                    assert_eq!(faces[k].tail, k);
                    assert_eq!(faces[k].word, FreeWord::new(vec![Letter::neg(sp.c(k))]));
                }
                // capped surface: V - E + F = 2 - 2g
                let euler = 1 - sp.rank() as i64 + b as i64;
                assert_eq!(euler, 2 - 2 * g as i64);
            }
        }
    }
}
