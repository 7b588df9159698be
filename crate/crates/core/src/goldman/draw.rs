//! Drawing words on the ribbon graph and reading off transverse crossings.
//!
//! Every letter occurrence runs along the band of its generator in its own
//! lane; between consecutive letters a curve crosses the vertex disk as a
//! straight chord. Two chords from different curves cross exactly when
//! their endpoints alternate around the disk boundary.

use crate::surface::{Letter, RibbonStructure};

/// Deterministic rule for stacking parallel strands within a band.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum StrandOrder {
    /// Lanes sorted by (operand, position) ascending.
    #[default]
    Forward,
    /// Lanes sorted by (operand, position) descending.
    Reverse,
}

/// Point on the vertex disk boundary: slot position, then sub-position
/// counterclockwise within the slot. Lexicographic order is the
/// counterclockwise order starting from the outer tail.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Point {
    pub slot: usize,
    pub sub: usize,
}

/// Curve to be drawn: a closed loop or an open path between tails.
#[derive(Debug, Clone, Copy)]
pub enum Curve<'a> {
    Loop(&'a [Letter]),
    Path {
        letters: &'a [Letter],
        from: usize,
        to: usize,
    },
}

impl<'a> Curve<'a> {
    pub fn letters(&self) -> &'a [Letter] {
        match *self {
            Curve::Loop(l) => l,
            Curve::Path { letters, .. } => letters,
        }
    }
}

/// Chord of one curve inside the vertex disk. For a loop, passage `i`
/// joins letter `i` to letter `i+1`; for a path, passage `j` precedes
/// letter `j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Passage {
    pub operand: usize,
    pub index: usize,
    pub from: Point,
    pub to: Point,
}

/// Transverse crossing between a passage of the first operand and one of
/// the second, with the sign of the frame (first, second).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Crossing {
    pub first: usize,
    pub second: usize,
    pub sign: i32,
}

/// Draws the curves and returns the passages of each.
pub fn passages(rib: &RibbonStructure, curves: &[Curve<'_>], order: StrandOrder) -> Vec<Vec<Passage>> {
    let rank = rib.spec().rank();
    // lanes[gen] = occurrences (operand, position) in that band
    let mut lanes: Vec<Vec<(usize, usize)>> = vec![Vec::new(); rank];
    for (op, c) in curves.iter().enumerate() {
        for (pos, l) in c.letters().iter().enumerate() {
            lanes[l.gen as usize].push((op, pos));
        }
    }
    // rank of each occurrence (1-based) and band count
    let mut lane_of: Vec<Vec<(usize, usize)>> = curves
        .iter()
        .map(|c| vec![(0, 0); c.letters().len()])
        .collect();
    for occ in lanes.iter_mut() {
        occ.sort();
        if order == StrandOrder::Reverse {
            occ.reverse();
        }
        let count = occ.len();
        for (r, &(op, pos)) in occ.iter().enumerate() {
            lane_of[op][pos] = (r + 1, count);
        }
    }
    let start = |op: usize, pos: usize, l: Letter| {
        let (r, c) = lane_of[op][pos];
        if l.inv {
            Point { slot: rib.in_pos(l.gen), sub: c + 1 - r }
        } else {
            Point { slot: rib.out_pos(l.gen), sub: r }
        }
    };
    let end = |op: usize, pos: usize, l: Letter| {
        let (r, c) = lane_of[op][pos];
        if l.inv {
            Point { slot: rib.out_pos(l.gen), sub: r }
        } else {
            Point { slot: rib.in_pos(l.gen), sub: c + 1 - r }
        }
    };
    let tail = |t: usize| Point {
        slot: rib.tail_pos(t),
        sub: 0,
    };
    curves
        .iter()
        .enumerate()
        .map(|(op, c)| match *c {
            Curve::Loop(ls) => {
                let m = ls.len();
                (0..m)
                    .map(|i| {
                        let k = (i + 1) % m;
                        Passage {
                            operand: op,
                            index: i,
                            from: end(op, i, ls[i]),
                            to: start(op, k, ls[k]),
                        }
                    })
                    .collect()
            }
            Curve::Path { letters, from, to } => {
                let m = letters.len();
                if m == 0 && from == to {
                    return Vec::new();
                }
                (0..=m)
                    .map(|j| Passage {
                        operand: op,
                        index: j,
                        from: if j == 0 {
                            tail(from)
                        } else {
                            end(op, j - 1, letters[j - 1])
                        },
                        to: if j == m {
                            tail(to)
                        } else {
                            start(op, j, letters[j])
                        },
                    })
                    .collect()
            }
        })
        .collect()
}

/// Whether `c` lies strictly inside the counterclockwise arc from `a` to `b`.
fn in_arc(a: Point, b: Point, c: Point) -> bool {
    if a < b {
        a < c && c < b
    } else {
        c > a || c < b
    }
}

/// Sign of the crossing of two chords, or zero when they are disjoint.
/// Positive when the second chord runs from the left of the first to its
/// right, i.e. the frame (first, second) is counterclockwise.
pub fn chord_crossing(p: &Passage, q: &Passage) -> i32 {
    debug_assert!(
        p.from != q.from && p.from != q.to && p.to != q.from && p.to != q.to,
        "chords of distinct curves share an endpoint"
    );
    let c_in = in_arc(p.from, p.to, q.from);
    let d_in = in_arc(p.from, p.to, q.to);
    match (c_in, d_in) {
        (true, false) => 1,
        (false, true) => -1,
        _ => 0,
    }
}

/// All crossings between two drawn curves.
pub fn crossings(first: &[Passage], second: &[Passage]) -> Vec<Crossing> {
    let mut out = Vec::new();
    for p in first {
        for q in second {
            let sign = chord_crossing(p, q);
            if sign != 0 {
                out.push(Crossing {
                    first: p.index,
                    second: q.index,
                    sign,
                });
            }
        }
    }
    out
}

/// Draws two curves together and lists their crossings.
pub fn pair_crossings(
    rib: &RibbonStructure,
    first: Curve<'_>,
    second: Curve<'_>,
    order: StrandOrder,
) -> Vec<Crossing> {
    let ps = passages(rib, &[first, second], order);
    crossings(&ps[0], &ps[1])
}
