//! Decomposition of the arrangement below the k-level into k concave chains,
//! chain pair crossings, strict common tangents, and the tangent-to-crossing
//! charging map.

use std::collections::BTreeMap;

use crate::arrangement::Arrangement;
use crate::geom::{line_through, rat_to_string, Line, Rat};
use crate::Error;

/// A maximal straight stretch of a chain: `line` carried over the x-interval
/// `from..to`, where `from = None` means -inf and `to = None` means +inf.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Piece {
    pub line: usize,
    pub from: Option<Rat>,
    pub to: Option<Rat>,
}

/// One concave chain: pieces with strictly decreasing slopes, meeting at the
/// turn vertices (all members of `V_{k-1}`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chain {
    /// Zero-based id; chain 0 starts on the largest slope at x = -inf.
    pub id: usize,
    pub pieces: Vec<Piece>,
    /// Arrangement vertex indices of the turns, in x order.
    pub turns: Vec<usize>,
}

impl Chain {
    /// Slope window at turn `t`: the open interval (outgoing slope, incoming
    /// slope). A line through the turn vertex supports the chain strictly iff
    /// its slope lies strictly inside this window.
    pub fn slope_window(&self, arr: &Arrangement, t: usize) -> (Rat, Rat) {
        let incoming = arr.lines[self.pieces[t].line].a.clone();
        let outgoing = arr.lines[self.pieces[t + 1].line].a.clone();
        (outgoing, incoming)
    }

    pub fn line_sequence(&self) -> Vec<usize> {
        self.pieces.iter().map(|p| p.line).collect()
    }
}

/// The k chains below the k-level plus, per unordered chain pair, the
/// vertices where the pair crosses (in x order).
#[derive(Debug, Clone)]
pub struct ChainSet {
    pub k: usize,
    pub chains: Vec<Chain>,
    crossing_index: BTreeMap<(usize, usize), Vec<usize>>,
}

impl ChainSet {
    /// Vertices where chains `i` and `j` exchange vertical order, `i < j`.
    pub fn chain_pair_crossings(&self, i: usize, j: usize) -> &[usize] {
        assert!(i < j && j < self.k, "chain pair out of range");
        self.crossing_index.get(&(i, j)).map_or(&[], Vec::as_slice)
    }

    pub fn total_crossings(&self) -> u64 {
        self.crossing_index.values().map(|v| v.len() as u64).sum()
    }

    pub fn pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.k {
            for j in i + 1..self.k {
                out.push((i, j));
            }
        }
        out
    }
}

/// Sweep construction of the chain decomposition.
///
/// The k chains start on the k largest-slope lines at x = -inf and are
/// processed against the vertices in (x, y) order: a vertex of `V_{k-1}`
/// turns the chain on its larger-slope line onto the smaller-slope one; a
/// vertex with below-count at most k-2 is a crossing of the two chains
/// carrying its lines; all other vertices involve no chain.
pub fn decompose_chains(arr: &Arrangement, k: usize) -> Result<ChainSet, Error> {
    let n = arr.n();
    if k < 1 || k > n - 1 {
        return Err(Error::BadK { k, n });
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| arr.lines[j].a.cmp(&arr.lines[i].a));

    let mut carrier: Vec<Option<usize>> = vec![None; n];
    let mut chains: Vec<Chain> = (0..k)
        .map(|c| {
            carrier[order[c]] = Some(c);
            Chain {
                id: c,
                pieces: vec![Piece {
                    line: order[c],
                    from: None,
                    to: None,
                }],
                turns: Vec::new(),
            }
        })
        .collect();
    let mut crossing_index: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();

    for (vi, v) in arr.vertices.iter().enumerate() {
        let (a, b) = v.line_pair;
        if v.below_count + 2 <= k {
            // Both incident lines are among the k lowest here: the two chains
            // cross and continue straight.
            let ca = carrier[a].expect("crossing vertex incident to an uncarried line");
            let cb = carrier[b].expect("crossing vertex incident to an uncarried line");
            assert_ne!(ca, cb, "a chain cannot cross itself");
            crossing_index
                .entry((ca.min(cb), ca.max(cb)))
                .or_default()
                .push(vi);
        } else if v.below_count + 1 == k {
            // V_{k-1}: the chain on the larger-slope (lower, until now) line
            // turns onto the smaller-slope line vacated by the level.
            let (hi, lo) = if arr.lines[a].a > arr.lines[b].a {
                (a, b)
            } else {
                (b, a)
            };
            let c = carrier[hi].expect("turn vertex must involve a carried line");
            assert!(carrier[lo].is_none(), "turn target line already carried");
            let x = v.location.x.clone();
            chains[c].pieces.last_mut().unwrap().to = Some(x.clone());
            chains[c].pieces.push(Piece {
                line: lo,
                from: Some(x),
                to: None,
            });
            chains[c].turns.push(vi);
            carrier[hi] = None;
            carrier[lo] = Some(c);
        } else {
            debug_assert!(
                carrier[a].is_none() && carrier[b].is_none(),
                "vertex above the level cannot touch a chain"
            );
        }
    }

    Ok(ChainSet {
        k,
        chains,
        crossing_index,
    })
}

/// A line touching two chains at one turn vertex each and lying strictly
/// above both chains everywhere else.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tangent {
    pub line: Line,
    /// `(chain id, arrangement vertex)` for each touch, ordered as the
    /// requested pair.
    pub touches: [(usize, usize); 2],
    /// Open x-interval between the two touch vertices.
    pub span: (Rat, Rat),
}

/// All strict common tangents of chains `i` and `j`: lines through one turn
/// vertex of each whose slope is strictly inside both slope windows and that
/// pass strictly above every other turn vertex of both chains. Lines
/// containing a whole piece fail the strict window and are excluded.
pub fn common_tangents(arr: &Arrangement, cs: &ChainSet, i: usize, j: usize) -> Vec<Tangent> {
    assert!(i < j && j < cs.k, "chain pair out of range");
    let ci = &cs.chains[i];
    let cj = &cs.chains[j];
    let mut out = Vec::new();
    for (ti, &u) in ci.turns.iter().enumerate() {
        for (tj, &w) in cj.turns.iter().enumerate() {
            let pu = &arr.vertices[u].location;
            let pw = &arr.vertices[w].location;
            if pu.x == pw.x {
                continue;
            }
            let line = line_through(pu, pw).expect("touch vertices have distinct x");
            let (lo_i, hi_i) = ci.slope_window(arr, ti);
            if line.a <= lo_i || line.a >= hi_i {
                continue;
            }
            let (lo_j, hi_j) = cj.slope_window(arr, tj);
            if line.a <= lo_j || line.a >= hi_j {
                continue;
            }
            let supports = ci
                .turns
                .iter()
                .chain(cj.turns.iter())
                .filter(|&&z| z != u && z != w)
                .all(|&z| line.point_below(&arr.vertices[z].location));
            if !supports {
                continue;
            }
            let span = if pu.x < pw.x {
                (pu.x.clone(), pw.x.clone())
            } else {
                (pw.x.clone(), pu.x.clone())
            };
            out.push(Tangent {
                line,
                touches: [(i, u), (j, w)],
                span,
            });
        }
    }
    out
}

/// A tangent charged to a crossing of its chain pair: the crossing lies
/// strictly below the tangent line, strictly inside its x-span.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TangentCharge {
    pub tangent: Tangent,
    /// Arrangement vertex index of the charged crossing.
    pub crossing: usize,
}

/// Charges every common tangent of the pair to the eligible crossing with the
/// smallest x. A tangent with no eligible crossing is a
/// [`Error::ChargeFailure`]: it signals a bug or a violated structural
/// assumption and is surfaced, never swallowed.
pub fn charge_tangents(
    arr: &Arrangement,
    cs: &ChainSet,
    i: usize,
    j: usize,
) -> Result<Vec<TangentCharge>, Error> {
    let tangents = common_tangents(arr, cs, i, j);
    let crossings = cs.chain_pair_crossings(i, j);
    let mut out = Vec::with_capacity(tangents.len());
    for tangent in tangents {
        // crossings are in x order, so the first eligible one has smallest x
        let charged = crossings.iter().copied().find(|&vi| {
            let p = &arr.vertices[vi].location;
            p.x > tangent.span.0 && p.x < tangent.span.1 && tangent.line.point_below(p)
        });
        match charged {
            Some(crossing) => out.push(TangentCharge { tangent, crossing }),
            None => {
                return Err(Error::ChargeFailure(format!(
                    "tangent of chains ({i}, {j}) spanning x in ({}, {}) has no crossing below it",
                    rat_to_string(&tangent.span.0),
                    rat_to_string(&tangent.span.1),
                )))
            }
        }
    }
    Ok(out)
}
