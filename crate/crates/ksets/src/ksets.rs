//! Brute-force, oracle-grade enumeration of directed k-sets in the primal
//! plane. This module is the independent truth source the dual pipeline is
//! checked against, so it favors the simplest complete argument over speed:
//! every directed k-set arises by perturbing a line through two points
//! (translate a witness line until it hits a point, rotate until it hits a
//! second), so scanning all pair lines and perturbing both ways enumerates
//! them all.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use num_traits::{One, Zero};

use crate::geom::{line_through, Line, Rat};
use crate::instance::Instance;
use crate::par;
use crate::Error;

/// Which open halfplane of the separating line holds the k points.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Side {
    Above,
    Below,
}

impl Side {
    pub fn opposite(self) -> Side {
        match self {
            Side::Above => Side::Below,
            Side::Below => Side::Above,
        }
    }
}

/// The distinct k-element subsets realizable strictly on one side of some
/// non-vertical line. Sets are sorted index vectors; the container is ordered,
/// so iteration is deterministic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KSetFamily {
    pub k: usize,
    pub side: Side,
    pub sets: BTreeSet<Vec<usize>>,
}

impl KSetFamily {
    pub fn count(&self) -> u64 {
        self.sets.len() as u64
    }
}

fn check_k(inst: &Instance, k: usize) -> Result<(), Error> {
    if k < 1 || k > inst.n() - 1 {
        return Err(Error::BadK { k, n: inst.n() });
    }
    Ok(())
}

/// One pass over all pair lines, producing the directed family for every
/// k in `1..=n-1` on the given side.
pub fn enumerate_all_directed(inst: &Instance, side: Side) -> Vec<KSetFamily> {
    let n = inst.n();
    let pts = inst.points();
    let mut pairs = Vec::with_capacity(n * (n - 1) / 2);
    for i in 0..n {
        for j in i + 1..n {
            pairs.push((i, j));
        }
    }
    // For a pair line with side-set S (the points strictly on `side`), the
    // two perturbations that keep one endpoint realize S+{i} and S+{j}.
    let per_pair: Vec<(usize, Vec<usize>, Vec<usize>)> = par::map_vec(&pairs, |&(i, j)| {
        let line = line_through(&pts[i], &pts[j]).expect("validated instance has no shared x");
        let want = match side {
            Side::Above => Ordering::Greater,
            Side::Below => Ordering::Less,
        };
        let on_side: Vec<usize> = (0..n).filter(|&m| line.side_of(&pts[m]) == want).collect();
        let mut with_i = on_side.clone();
        with_i.push(i);
        with_i.sort_unstable();
        let mut with_j = on_side;
        with_j.push(j);
        with_j.sort_unstable();
        let k = with_i.len();
        (k, with_i, with_j)
    });

    let mut families: Vec<KSetFamily> = (1..n)
        .map(|k| KSetFamily {
            k,
            side,
            sets: BTreeSet::new(),
        })
        .collect();
    for (k, a, b) in per_pair {
        families[k - 1].sets.insert(a);
        families[k - 1].sets.insert(b);
    }
    families
}

/// The explicit family of directed k-sets.
pub fn enumerate_directed_ksets(
    inst: &Instance,
    k: usize,
    side: Side,
) -> Result<KSetFamily, Error> {
    check_k(inst, k)?;
    Ok(enumerate_all_directed(inst, side).swap_remove(k - 1))
}

/// Number of distinct k-subsets realizable strictly on `side` of some line.
pub fn count_directed_ksets(inst: &Instance, k: usize, side: Side) -> Result<u64, Error> {
    Ok(enumerate_directed_ksets(inst, k, side)?.count())
}

/// Sum of the directed counts for `1..=k`; at most `n*k` by the tight
/// at-most-k bound, which callers may check against.
pub fn count_at_most_k(inst: &Instance, k: usize, side: Side) -> Result<u64, Error> {
    check_k(inst, k)?;
    let all = enumerate_all_directed(inst, side);
    Ok(all[..k].iter().map(|f| f.count()).sum())
}

/// Exact separating-line witness for a candidate subset, or `None` when the
/// subset is not realizable on that side.
///
/// Feasibility of the strict system {members on `side`, non-members opposite}
/// is decided in the dual (a, b) plane, where each point contributes a
/// halfplane bounded by its dual line: if the open feasible region is
/// nonempty, its closure has a corner at two dual-line intersections (no two
/// boundaries are parallel, and no three are concurrent in general position),
/// and stepping from that corner into the feasible cone gives a rational
/// interior witness.
pub fn separating_line(inst: &Instance, set: &[usize], side: Side) -> Option<Line> {
    let n = inst.n();
    let pts = inst.points();
    let mut member = vec![false; n];
    for &i in set {
        member[i] = true;
    }
    // wants_above(m): the constraint on (a, b) is y_m - a*x_m + b > 0,
    // gradient (-x_m, +1); otherwise a*x_m - b - y_m > 0, gradient (x_m, -1).
    let wants_above = |m: usize| member[m] == (side == Side::Above);
    let g = |m: usize, a: &Rat, b: &Rat| -> Rat {
        let v = &pts[m].y - a * &pts[m].x + b;
        if wants_above(m) {
            v
        } else {
            -v
        }
    };
    let grad = |m: usize| -> (Rat, Rat) {
        if wants_above(m) {
            (-pts[m].x.clone(), Rat::one())
        } else {
            (pts[m].x.clone(), -Rat::one())
        }
    };

    for i in 0..n {
        for j in i + 1..n {
            // Corner candidate: intersection of boundary lines i and j.
            let a = (&pts[i].y - &pts[j].y) / (&pts[i].x - &pts[j].x);
            let b = &a * &pts[i].x - &pts[i].y;
            if (0..n).any(|m| m != i && m != j && g(m, &a, &b) <= Rat::zero()) {
                continue;
            }
            // Direction u with grad_i . u = grad_j . u = 1 leads into the
            // feasible cone of the two active constraints.
            let (gia, gib) = grad(i);
            let (gja, gjb) = grad(j);
            let det = &gia * &gjb - &gib * &gja;
            debug_assert!(!num_traits::Zero::is_zero(&det));
            let u_a = (&gjb - &gib) / &det;
            let u_b = (&gia - &gja) / &det;
            // Largest safe step: stay strictly inside every inactive
            // constraint.
            let mut eps = Rat::one();
            for m in 0..n {
                if m == i || m == j {
                    continue;
                }
                let (gma, gmb) = grad(m);
                let d = &gma * &u_a + &gmb * &u_b;
                if d < Rat::zero() {
                    let bound = g(m, &a, &b) / -d;
                    if bound < eps {
                        eps = bound;
                    }
                }
            }
            eps /= crate::geom::rat(2);
            let wa = &a + &eps * &u_a;
            let wb = &b + &eps * &u_b;
            debug_assert!((0..n).all(|m| g(m, &wa, &wb) > Rat::zero()));
            return Some(Line::new(wa, wb));
        }
    }
    None
}

/// True iff `set` is cuttable off strictly on `side` by some non-vertical
/// line.
pub fn is_realizable(inst: &Instance, set: &[usize], side: Side) -> bool {
    separating_line(inst, set, side).is_some()
}
