//! The dual line arrangement: vertex classification into `V_j` by strict
//! below-count, k-level extraction, and level profiles.

use std::collections::BTreeSet;

use crate::geom::{dualize_point, intersect, rat, Line, Point, Rat};
use crate::instance::Instance;
use crate::par;
use crate::Error;

/// An arrangement vertex: the crossing of two dual lines, classified by the
/// number of other lines strictly below it. A vertex with `below_count = j`
/// is a member of `V_j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArrVertex {
    pub location: Point,
    /// Indices of the two incident lines, `line_pair.0 < line_pair.1`.
    pub line_pair: (usize, usize),
    /// Lines strictly below `location`, excluding the two incident ones.
    pub below_count: usize,
}

/// All pairwise intersections of the dual lines of an instance, sorted by
/// `(x, y)` for deterministic downstream walks.
#[derive(Debug, Clone)]
pub struct Arrangement {
    pub lines: Vec<Line>,
    pub vertices: Vec<ArrVertex>,
    /// Vertex indices on each line, sorted by x.
    on_line: Vec<Vec<usize>>,
}

/// Number of `lines` strictly below the point `(x, y)`, skipping the indices
/// in `exclude`.
pub fn strict_below_count(lines: &[Line], x: &Rat, y: &Rat, exclude: &[usize]) -> usize {
    lines
        .iter()
        .enumerate()
        .filter(|(i, l)| !exclude.contains(i) && l.eval(x) < *y)
        .count()
}

/// Builds the dual arrangement of a validated instance. All `C(n, 2)` vertex
/// locations are exact, and `sum_j |V_j| = C(n, 2)`.
pub fn build_arrangement(inst: &Instance) -> Arrangement {
    let lines: Vec<Line> = inst.points().iter().map(dualize_point).collect();
    let n = lines.len();
    let mut pairs = Vec::with_capacity(n * (n - 1) / 2);
    for i in 0..n {
        for j in i + 1..n {
            pairs.push((i, j));
        }
    }
    let mut vertices: Vec<ArrVertex> = par::map_vec(&pairs, |&(i, j)| {
        let location =
            intersect(&lines[i], &lines[j]).expect("validated instances give distinct dual slopes");
        let below_count = strict_below_count(&lines, &location.x, &location.y, &[i, j]);
        ArrVertex {
            location,
            line_pair: (i, j),
            below_count,
        }
    });
    vertices.sort_by(|u, v| u.location.cmp(&v.location));
    let mut on_line = vec![Vec::new(); n];
    for (vi, v) in vertices.iter().enumerate() {
        on_line[v.line_pair.0].push(vi);
        on_line[v.line_pair.1].push(vi);
    }
    for list in &mut on_line {
        list.sort_by(|&a, &b| vertices[a].location.x.cmp(&vertices[b].location.x));
    }
    Arrangement {
        lines,
        vertices,
        on_line,
    }
}

impl Arrangement {
    pub fn n(&self) -> usize {
        self.lines.len()
    }

    /// `|V_j|` for `j` in `0..=n-2`.
    pub fn profile(&self) -> Vec<u64> {
        let mut counts = vec![0u64; self.n().saturating_sub(1)];
        for v in &self.vertices {
            counts[v.below_count] += 1;
        }
        counts
    }

    /// Indices of the vertices in `V_j`, in `(x, y)` order.
    pub fn class(&self, j: usize) -> Vec<usize> {
        (0..self.vertices.len())
            .filter(|&vi| self.vertices[vi].below_count == j)
            .collect()
    }

    /// Vertex indices on `line`, sorted by x.
    pub fn vertices_on_line(&self, line: usize) -> &[usize] {
        &self.on_line[line]
    }

    fn next_on_line_after(&self, line: usize, x: &Rat) -> Option<usize> {
        self.on_line[line]
            .iter()
            .copied()
            .find(|&vi| self.vertices[vi].location.x > *x)
            .to_owned()
    }
}

/// An arrangement edge: the stretch of `line` between two consecutive
/// vertices on it (`None` marks an unbounded end), classified by the strict
/// below-count of a sample point in its interior.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArrEdge {
    pub line: usize,
    pub from: Option<usize>,
    pub to: Option<usize>,
    pub below: usize,
}

/// Every edge of the arrangement with a midpoint-certified below-count.
/// Independent of the chain sweep, so it can serve as its cover oracle.
pub fn enumerate_edges(arr: &Arrangement) -> Vec<ArrEdge> {
    let per_line: Vec<Vec<ArrEdge>> = par::map_range(arr.n(), |line| {
        let verts = arr.vertices_on_line(line);
        debug_assert!(!verts.is_empty(), "every line meets every other");
        let mut stops: Vec<Option<usize>> = vec![None];
        stops.extend(verts.iter().copied().map(Some));
        stops.push(None);
        let mut edges = Vec::with_capacity(stops.len() - 1);
        for w in stops.windows(2) {
            let sample_x = match (w[0], w[1]) {
                (None, Some(v)) => &arr.vertices[v].location.x - rat(1),
                (Some(u), Some(v)) => {
                    (&arr.vertices[u].location.x + &arr.vertices[v].location.x) / rat(2)
                }
                (Some(u), None) => &arr.vertices[u].location.x + rat(1),
                (None, None) => unreachable!(),
            };
            let sample_y = arr.lines[line].eval(&sample_x);
            let below = strict_below_count(&arr.lines, &sample_x, &sample_y, &[line]);
            edges.push(ArrEdge {
                line,
                from: w[0],
                to: w[1],
                below,
            });
        }
        edges
    });
    per_line.into_iter().flatten().collect()
}

/// The k-level: an x-monotone polyline with `|vertex_seq| + 1` edges, the
/// first and last unbounded. `edge_lines[e]` carries edge `e`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Level {
    pub k: usize,
    /// Arrangement vertex indices in walk (= x) order.
    pub vertex_seq: Vec<usize>,
    pub edge_lines: Vec<usize>,
}

impl Level {
    /// The level's vertex set, for comparisons against `V_k` and `V_{k-1}`.
    pub fn vertex_set(&self) -> BTreeSet<usize> {
        self.vertex_seq.iter().copied().collect()
    }
}

/// Line indices ordered by slope, largest first.
fn slope_order_desc(lines: &[Line]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..lines.len()).collect();
    order.sort_by(|&i, &j| lines[j].a.cmp(&lines[i].a));
    order
}

/// Walks the k-level from x = -inf (on the line with the (k+1)-th largest
/// slope) to x = +inf (on the line with the (k+1)-th smallest slope).
///
/// Instead of maintaining incremental counters, each step certifies the next
/// edge by recounting the lines strictly below a sample point in its
/// interior; the level continues on the unique candidate whose count is
/// exactly k.
pub fn extract_k_level(arr: &Arrangement, k: usize) -> Result<Level, Error> {
    let n = arr.n();
    if k > n - 1 {
        return Err(Error::BadK { k, n });
    }
    let order = slope_order_desc(&arr.lines);
    let start = order[k];
    let mut vertex_seq = Vec::new();
    let mut edge_lines = vec![start];
    let mut cur_line = start;
    let mut cur_x: Option<Rat> = None; // None = -inf

    loop {
        let next = match &cur_x {
            None => arr.on_line[cur_line].first().copied(),
            Some(x) => arr.next_on_line_after(cur_line, x),
        };
        let Some(vi) = next else { break };
        vertex_seq.push(vi);
        let (a, b) = arr.vertices[vi].line_pair;
        let other = if a == cur_line { b } else { a };
        let vx = arr.vertices[vi].location.x.clone();
        let mut continuation = None;
        for cand in [cur_line, other] {
            let sample_x = match arr.next_on_line_after(cand, &vx) {
                Some(wi) => (&vx + &arr.vertices[wi].location.x) / rat(2),
                None => &vx + rat(1),
            };
            let sample_y = arr.lines[cand].eval(&sample_x);
            if strict_below_count(&arr.lines, &sample_x, &sample_y, &[cand]) == k {
                debug_assert!(continuation.is_none(), "level continuation must be unique");
                continuation = Some(cand);
                #[cfg(not(debug_assertions))]
                break;
            }
        }
        let next_line = continuation.expect("k-level must continue past every vertex on it");
        edge_lines.push(next_line);
        cur_line = next_line;
        cur_x = Some(vx);
    }

    debug_assert_eq!(
        cur_line,
        order[n - 1 - k],
        "level must end on the (k+1)-th smallest slope"
    );
    Ok(Level {
        k,
        vertex_seq,
        edge_lines,
    })
}

/// Per-class vertex counts together with the number of vertices strictly
/// below the k-level and the `n*k` ceiling it is compared against.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelProfile {
    pub k: usize,
    /// `|V_j|` for `j` in `0..=n-2`.
    pub counts: Vec<u64>,
    /// `sum_{j <= k-1} |V_j|`.
    pub below_level: u64,
    pub nk: u64,
}

pub fn level_profile(arr: &Arrangement, k: usize) -> Result<LevelProfile, Error> {
    let n = arr.n();
    if k < 1 || k > n - 1 {
        return Err(Error::BadK { k, n });
    }
    let counts = arr.profile();
    let below_level = counts[..k].iter().sum();
    Ok(LevelProfile {
        k,
        counts,
        below_level,
        nk: (n as u64) * (k as u64),
    })
}
