//! The Dey graph `G` in the primal plane: one straight edge per point pair
//! whose connecting line dualizes to a `V_{k-1}` vertex, together with its
//! crossing number, the crossing-lemma threshold, and the map from a crossing
//! to its dual common tangent.

use std::collections::BTreeMap;

use crate::arrangement::Arrangement;
use crate::chains::{ChainSet, Tangent};
use crate::geom::{
    dualize_point, intersect, line_through, rat, segments_properly_cross, Line, Point, Rat, Segment,
};
use crate::instance::Instance;
use crate::par;
use crate::Error;

/// One edge of `G`. The carrying line has exactly k-1 instance points
/// strictly above it, and `dual_vertex` is the index of the corresponding
/// `V_{k-1}` arrangement vertex.
#[derive(Debug, Clone)]
pub struct GraphEdge {
    pub pair: (usize, usize),
    pub seg: Segment,
    pub line: Line,
    pub dual_vertex: usize,
}

#[derive(Debug, Clone)]
pub struct DeyGraph {
    pub k: usize,
    pub edges: Vec<GraphEdge>,
}

impl DeyGraph {
    pub fn t(&self) -> u64 {
        self.edges.len() as u64
    }
}

/// Builds `G` primally (count points strictly above each pair line) and
/// verifies it dually: the edge set must coincide with `V_{k-1}` under the
/// duality, vertex by vertex. Any disagreement is a kernel bug and surfaces
/// as [`Error::CrossCheckMismatch`].
pub fn build_dey_graph(inst: &Instance, arr: &Arrangement, k: usize) -> Result<DeyGraph, Error> {
    let n = inst.n();
    if k < 1 || k > n - 1 {
        return Err(Error::BadK { k, n });
    }
    let pts = inst.points();
    let mut pairs = Vec::with_capacity(n * (n - 1) / 2);
    for i in 0..n {
        for j in i + 1..n {
            pairs.push((i, j));
        }
    }
    let vertex_by_pair: BTreeMap<(usize, usize), usize> = arr
        .vertices
        .iter()
        .enumerate()
        .map(|(vi, v)| (v.line_pair, vi))
        .collect();

    let flags: Vec<bool> = par::map_vec(&pairs, |&(i, j)| {
        let line = line_through(&pts[i], &pts[j]).expect("validated instance");
        let above = (0..n).filter(|&m| line.point_above(&pts[m])).count();
        above == k - 1
    });

    let mut edges = Vec::new();
    for (&(i, j), &is_edge) in pairs.iter().zip(flags.iter()) {
        if !is_edge {
            continue;
        }
        let line = line_through(&pts[i], &pts[j]).expect("validated instance");
        let &dual_vertex = vertex_by_pair.get(&(i, j)).ok_or_else(|| {
            Error::CrossCheckMismatch(format!("no dual vertex for pair ({i}, {j})"))
        })?;
        let v = &arr.vertices[dual_vertex];
        if v.location != line.dual_point() {
            return Err(Error::CrossCheckMismatch(format!(
                "edge ({i}, {j}): dual point of its line is not the arrangement vertex"
            )));
        }
        if v.below_count != k - 1 {
            return Err(Error::CrossCheckMismatch(format!(
                "edge ({i}, {j}): {} points above primally but dual vertex in V_{}",
                k - 1,
                v.below_count
            )));
        }
        edges.push(GraphEdge {
            pair: (i, j),
            seg: Segment::new(pts[i].clone(), pts[j].clone()),
            line,
            dual_vertex,
        });
    }

    let vk1 = arr.class(k - 1);
    if edges.len() != vk1.len() {
        return Err(Error::CrossCheckMismatch(format!(
            "t = {} edges but |V_{}| = {}",
            edges.len(),
            k - 1,
            vk1.len()
        )));
    }
    for vi in vk1 {
        if !edges.iter().any(|e| e.dual_vertex == vi) {
            return Err(Error::CrossCheckMismatch(format!(
                "V_{} vertex {:?} has no primal edge",
                k - 1,
                arr.vertices[vi].location
            )));
        }
    }
    Ok(DeyGraph { k, edges })
}

/// Unordered index pairs of properly crossing segments. Exhaustive exact
/// tests over all pairs; shared endpoints never count.
pub fn proper_crossing_pairs(segs: &[Segment]) -> Vec<(usize, usize)> {
    let n = segs.len();
    let mut pairs = Vec::with_capacity(n.saturating_sub(1) * n / 2);
    for e in 0..n {
        for f in e + 1..n {
            pairs.push((e, f));
        }
    }
    let crossed: Vec<bool> = par::map_vec(&pairs, |&(e, f)| {
        segments_properly_cross(&segs[e], &segs[f])
    });
    pairs
        .into_iter()
        .zip(crossed)
        .filter_map(|(p, c)| c.then_some(p))
        .collect()
}

/// A proper crossing of two `G` edges, its exact location, and the dual line
/// of that location (which passes through both edges' dual vertices).
#[derive(Debug, Clone)]
pub struct CrossingRecord {
    pub edges: (usize, usize),
    pub point: Point,
    pub dual_line: Line,
}

/// The crossing number X of `G` with one record per crossing pair.
pub fn crossing_number(g: &DeyGraph) -> (u64, Vec<CrossingRecord>) {
    let segs: Vec<Segment> = g.edges.iter().map(|e| e.seg.clone()).collect();
    let records: Vec<CrossingRecord> = proper_crossing_pairs(&segs)
        .into_iter()
        .map(|(e, f)| {
            let point = intersect(&g.edges[e].line, &g.edges[f].line)
                .expect("properly crossing edges have distinct slopes");
            let dual_line = dualize_point(&point);
            CrossingRecord {
                edges: (e, f),
                point,
                dual_line,
            }
        })
        .collect();
    (records.len() as u64, records)
}

/// Outcome of the crossing-lemma test with the classical constant c = 1/64:
/// a straight-line graph with t > 4n edges has at least t^3 / (64 n^2)
/// crossings. For t <= 4n the check is vacuous (`applicable = false`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LemmaCheck {
    pub applicable: bool,
    pub threshold: Rat,
    pub holds: bool,
}

pub fn crossing_lemma_check(t: u64, n: u64, x: u64) -> LemmaCheck {
    let applicable = t > 4 * n;
    let t_rat = rat(t as i64);
    let threshold = &t_rat * &t_rat * &t_rat / (rat(64) * rat(n as i64) * rat(n as i64));
    let holds = !applicable || rat(x as i64) >= threshold;
    LemmaCheck {
        applicable,
        threshold,
        holds,
    }
}

/// Maps a crossing of `G` to the common tangent it dualizes to: the dual line
/// of the crossing point passes through both edges' dual vertices, which must
/// be turns of two distinct chains, with the strict tangent invariants
/// holding. Any failure is surfaced as [`Error::TangentViolation`].
pub fn crossing_to_tangent(
    arr: &Arrangement,
    cs: &ChainSet,
    g: &DeyGraph,
    rec: &CrossingRecord,
) -> Result<Tangent, Error> {
    let line = &rec.dual_line;
    let v1 = g.edges[rec.edges.0].dual_vertex;
    let v2 = g.edges[rec.edges.1].dual_vertex;
    for v in [v1, v2] {
        if !line.contains(&arr.vertices[v].location) {
            return Err(Error::TangentViolation(format!(
                "dual line of crossing {:?} misses dual vertex {:?}",
                rec.point, arr.vertices[v].location
            )));
        }
    }
    let mut owner = BTreeMap::new();
    for chain in &cs.chains {
        for (pos, &v) in chain.turns.iter().enumerate() {
            owner.insert(v, (chain.id, pos));
        }
    }
    let &(c1, t1) = owner
        .get(&v1)
        .ok_or_else(|| Error::TangentViolation("dual vertex is not a chain turn".into()))?;
    let &(c2, t2) = owner
        .get(&v2)
        .ok_or_else(|| Error::TangentViolation("dual vertex is not a chain turn".into()))?;
    if c1 == c2 {
        return Err(Error::TangentViolation(format!(
            "both dual vertices turn the same chain {c1}"
        )));
    }
    let ((ci, ti, ui), (cj, tj, uj)) = if c1 < c2 {
        ((c1, t1, v1), (c2, t2, v2))
    } else {
        ((c2, t2, v2), (c1, t1, v1))
    };
    for (c, t) in [(ci, ti), (cj, tj)] {
        let (lo, hi) = cs.chains[c].slope_window(arr, t);
        if line.a <= lo || line.a >= hi {
            return Err(Error::TangentViolation(format!(
                "slope not strictly inside the window at a turn of chain {c}"
            )));
        }
    }
    let supports = cs.chains[ci]
        .turns
        .iter()
        .chain(cs.chains[cj].turns.iter())
        .filter(|&&z| z != ui && z != uj)
        .all(|&z| line.point_below(&arr.vertices[z].location));
    if !supports {
        return Err(Error::TangentViolation(
            "line does not pass strictly above the other chain vertices".into(),
        ));
    }
    let (pu, pw) = (&arr.vertices[ui].location, &arr.vertices[uj].location);
    let span = if pu.x < pw.x {
        (pu.x.clone(), pw.x.clone())
    } else {
        (pw.x.clone(), pu.x.clone())
    };
    Ok(Tangent {
        line: line.clone(),
        touches: [(ci, ui), (cj, uj)],
        span,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::build_arrangement;
    use crate::chains::decompose_chains;
    use crate::geom::ratio;
    use crate::instance::Instance;

    fn q4() -> Instance {
        Instance::new(vec![
            Point::from_ints(0, 0),
            Point::from_ints(4, 0),
            Point::from_ints(2, 3),
            Point::from_ints(1, 1),
        ])
        .unwrap()
    }

    #[test]
    fn q4_graph_is_a_star_at_d() {
        let inst = q4();
        let arr = build_arrangement(&inst);
        let g = build_dey_graph(&inst, &arr, 2).unwrap();
        let pairs: Vec<_> = g.edges.iter().map(|e| e.pair).collect();
        assert_eq!(pairs, vec![(0, 3), (1, 3), (2, 3)]);
        assert_eq!(g.t(), 3);
        // dual agreement: edge lines dualize onto V_1
        let duals: Vec<Point> = g.edges.iter().map(|e| e.line.dual_point()).collect();
        assert_eq!(
            duals,
            vec![
                Point::from_ints(1, 0),
                Point::new(ratio(-1, 3), ratio(-4, 3)),
                Point::from_ints(2, 1),
            ]
        );
        let (x, recs) = crossing_number(&g);
        assert_eq!(x, 0);
        assert!(recs.is_empty());
    }

    #[test]
    fn q4_k3_single_edge() {
        let inst = q4();
        let arr = build_arrangement(&inst);
        let g = build_dey_graph(&inst, &arr, 3).unwrap();
        let pairs: Vec<_> = g.edges.iter().map(|e| e.pair).collect();
        assert_eq!(pairs, vec![(0, 1)]);
    }

    #[test]
    fn synthetic_crossings() {
        let s = |a: (i64, i64), b: (i64, i64)| {
            Segment::new(Point::from_ints(a.0, a.1), Point::from_ints(b.0, b.1))
        };
        // X-configuration
        let two = vec![s((0, 0), (2, 2)), s((0, 2), (2, 0))];
        assert_eq!(proper_crossing_pairs(&two), vec![(0, 1)]);
        // complete graph on 4 points in convex position: only the diagonals cross
        let quad = [(0, 0), (4, 1), (5, 5), (1, 4)];
        let mut segs = Vec::new();
        for i in 0..4 {
            for j in i + 1..4 {
                segs.push(s(quad[i], quad[j]));
            }
        }
        assert_eq!(proper_crossing_pairs(&segs).len(), 1);
    }

    #[test]
    fn lemma_check_examples() {
        let easy = crossing_lemma_check(3, 4, 0);
        assert!(!easy.applicable && easy.holds);
        let running = crossing_lemma_check(6, 10, 0);
        assert!(!running.applicable && running.holds);
        let big = crossing_lemma_check(100, 20, 40);
        assert!(big.applicable);
        assert_eq!(big.threshold, ratio(625, 16)); // 10^6 / 25600 = 39.0625
        assert!(big.holds);
        assert!(!crossing_lemma_check(100, 20, 39).holds);
    }

    #[test]
    fn dual_line_of_crossing_passes_through_dual_vertices() {
        // segments on y = x and y = -x + 2 cross at (1, 1); the dual of (1, 1)
        // passes through the lines' dual points (1, 0) and (-1, -2)
        let l1 = Line::new(rat(1), rat(0));
        let l2 = Line::new(rat(-1), rat(-2));
        let p = intersect(&l1, &l2).unwrap();
        assert_eq!(p, Point::from_ints(1, 1));
        let dual = dualize_point(&p);
        assert!(dual.contains(&l1.dual_point()));
        assert!(dual.contains(&l2.dual_point()));
    }

    #[test]
    fn crossing_to_tangent_on_a_crossing_instance() {
        // Five points that give G at least one proper crossing at k = 2.
        let inst = Instance::new(vec![
            Point::from_ints(0, 0),
            Point::from_ints(7, 1),
            Point::from_ints(3, 4),
            Point::from_ints(1, 3),
            Point::from_ints(6, 5),
        ])
        .unwrap();
        let arr = build_arrangement(&inst);
        for k in 1..inst.n() {
            let g = build_dey_graph(&inst, &arr, k).unwrap();
            let cs = decompose_chains(&arr, k).unwrap();
            let (x, recs) = crossing_number(&g);
            for rec in &recs {
                let tangent = crossing_to_tangent(&arr, &cs, &g, rec).unwrap();
                assert!(tangent
                    .line
                    .contains(&arr.vertices[tangent.touches[0].1].location));
            }
            if k == 2 {
                assert!(x >= 1, "expected a crossing in the k=2 graph");
            }
        }
    }
}
