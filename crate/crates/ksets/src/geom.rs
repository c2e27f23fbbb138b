//! Exact geometric kernel: rational scalars, points, non-vertical lines,
//! orientation and incidence predicates, and the point/line duality
//! `(a, b) <-> y = a*x - b`.
//!
//! Every decision in the crate goes through this module, and everything here
//! is exact: no floating point, no epsilons.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::Error;

/// Exact rational scalar. Always in lowest terms with a positive denominator;
/// both invariants are maintained by `num_rational`.
pub type Rat = num_rational::BigRational;

/// Shorthand for an integer-valued `Rat`.
pub fn rat(v: i64) -> Rat {
    Rat::from_integer(BigInt::from(v))
}

/// Shorthand for `p/q`. Panics on `q = 0`; intended for literals in tests
/// and examples.
pub fn ratio(p: i64, q: i64) -> Rat {
    Rat::new(BigInt::from(p), BigInt::from(q))
}

/// Renders integers bare and proper fractions as `p/q`.
pub fn rat_to_string(r: &Rat) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Point {
    pub x: Rat,
    pub y: Rat,
}

impl Point {
    pub fn new(x: Rat, y: Rat) -> Self {
        Point { x, y }
    }

    /// Integer-coordinate convenience constructor.
    pub fn from_ints(x: i64, y: i64) -> Self {
        Point::new(rat(x), rat(y))
    }

    /// Reflection through the origin, `(x, y) -> (-x, -y)`. Swaps the
    /// above/below role of every separating line.
    pub fn reflected(&self) -> Self {
        Point::new(-self.x.clone(), -self.y.clone())
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}, {})",
            rat_to_string(&self.x),
            rat_to_string(&self.y)
        )
    }
}

/// Non-vertical line stored as the pair `(a, b)` representing `y = a*x - b`.
///
/// Vertical lines are unrepresentable by construction; operations that would
/// need one return [`Error::VerticalLine`].
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Line {
    pub a: Rat,
    pub b: Rat,
}

impl Line {
    pub fn new(a: Rat, b: Rat) -> Self {
        Line { a, b }
    }

    /// The y-value of the line at `x`.
    pub fn eval(&self, x: &Rat) -> Rat {
        &self.a * x - &self.b
    }

    /// Vertical position of `p` relative to the line:
    /// `Greater` means the point is strictly above, `Less` strictly below.
    pub fn side_of(&self, p: &Point) -> Ordering {
        p.y.cmp(&self.eval(&p.x))
    }

    /// The point lies strictly above the line.
    pub fn point_above(&self, p: &Point) -> bool {
        self.side_of(p) == Ordering::Greater
    }

    /// The point lies strictly below the line (equivalently, the line passes
    /// strictly above the point).
    pub fn point_below(&self, p: &Point) -> bool {
        self.side_of(p) == Ordering::Less
    }

    pub fn contains(&self, p: &Point) -> bool {
        self.side_of(p) == Ordering::Equal
    }

    /// The point `(a, b)` this line dualizes to.
    pub fn dual_point(&self) -> Point {
        Point::new(self.a.clone(), self.b.clone())
    }
}

impl fmt::Debug for Line {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "y = {}x - {}",
            rat_to_string(&self.a),
            rat_to_string(&self.b)
        )
    }
}

/// Straight segment with endpoints in canonical order `p.x < q.x`.
/// Vertical segments never arise from general-position inputs.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Segment {
    p: Point,
    q: Point,
}

impl Segment {
    /// Builds the canonical segment over two endpoints with distinct x.
    pub fn new(p: Point, q: Point) -> Self {
        assert!(p.x != q.x, "segment endpoints must have distinct x");
        if p.x < q.x {
            Segment { p, q }
        } else {
            Segment { p: q, q: p }
        }
    }

    pub fn left(&self) -> &Point {
        &self.p
    }

    pub fn right(&self) -> &Point {
        &self.q
    }
}

/// Sign of the determinant `|q - p, r - p|`: `+1` when `p, q, r` make a
/// counterclockwise turn, `0` when collinear.
pub fn orient(p: &Point, q: &Point, r: &Point) -> i8 {
    let det = (&q.x - &p.x) * (&r.y - &p.y) - (&q.y - &p.y) * (&r.x - &p.x);
    if det.is_zero() {
        0
    } else if det.is_positive() {
        1
    } else {
        -1
    }
}

/// Primal point `(a, b)` to dual line `y = a*x - b`.
pub fn dualize_point(p: &Point) -> Line {
    Line::new(p.x.clone(), p.y.clone())
}

/// Dual point `(a', b')` back to primal line `y = a'*x - b'`. Composed with
/// [`dualize_point`] this is the identity on coordinates.
pub fn dualize_line(v: &Point) -> Line {
    Line::new(v.x.clone(), v.y.clone())
}

/// The unique line through two points with distinct x.
pub fn line_through(p: &Point, q: &Point) -> Result<Line, Error> {
    if p.x == q.x {
        return Err(Error::VerticalLine);
    }
    let a = (&p.y - &q.y) / (&p.x - &q.x);
    let b = &a * &p.x - &p.y;
    Ok(Line::new(a, b))
}

/// The intersection point of two non-parallel lines.
pub fn intersect(l1: &Line, l2: &Line) -> Result<Point, Error> {
    if l1.a == l2.a {
        return if l1.b == l2.b {
            Err(Error::Coincident)
        } else {
            Err(Error::Parallel)
        };
    }
    let x = (&l1.b - &l2.b) / (&l1.a - &l2.a);
    let y = l1.eval(&x);
    Ok(Point::new(x, y))
}

/// True iff the open segments cross in exactly one point interior to both.
/// Shared endpoints and collinear overlaps are not crossings.
pub fn segments_properly_cross(s1: &Segment, s2: &Segment) -> bool {
    let d1 = orient(s1.left(), s1.right(), s2.left());
    let d2 = orient(s1.left(), s1.right(), s2.right());
    let d3 = orient(s2.left(), s2.right(), s1.left());
    let d4 = orient(s2.left(), s2.right(), s1.right());
    d1 * d2 < 0 && d3 * d4 < 0
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orient_examples() {
        let o = |a: (i64, i64), b: (i64, i64), c: (i64, i64)| {
            orient(
                &Point::from_ints(a.0, a.1),
                &Point::from_ints(b.0, b.1),
                &Point::from_ints(c.0, c.1),
            )
        };
        assert_eq!(o((0, 0), (1, 0), (0, 1)), 1);
        assert_eq!(o((0, 0), (1, 1), (2, 2)), 0);
        // sign of 4*3 - 0*2, by direct determinant
        assert_eq!(o((0, 0), (4, 0), (2, 3)), 1);
    }

    #[test]
    fn dualize_point_examples() {
        assert_eq!(
            dualize_point(&Point::from_ints(0, 0)),
            Line::new(rat(0), rat(0))
        );
        assert_eq!(
            dualize_point(&Point::from_ints(2, 2)),
            Line::new(rat(2), rat(2))
        );
        assert_eq!(
            dualize_point(&Point::from_ints(1, 1)),
            Line::new(rat(1), rat(1))
        );
        // incidence consistency: (5,8) lies on the dual of (2,2) exactly
        // because (2,2) lies on y = 5x - 8
        let d22 = dualize_point(&Point::from_ints(2, 2));
        assert!(d22.contains(&Point::from_ints(5, 8)));
        let l58 = dualize_line(&Point::from_ints(5, 8));
        assert!(l58.contains(&Point::from_ints(2, 2)));
    }

    #[test]
    fn dualize_line_examples() {
        assert_eq!(
            dualize_line(&Point::from_ints(5, 8)),
            Line::new(rat(5), rat(8))
        );
        assert_eq!(
            dualize_line(&Point::from_ints(0, 0)),
            Line::new(rat(0), rat(0))
        );
        // (2,1) maps to the line through (2,3) and (1,1)
        let l = dualize_line(&Point::from_ints(2, 1));
        assert!(l.contains(&Point::from_ints(2, 3)));
        assert!(l.contains(&Point::from_ints(1, 1)));
    }

    #[test]
    fn line_through_examples() {
        let l = line_through(&Point::from_ints(0, 0), &Point::from_ints(1, 1)).unwrap();
        assert_eq!(l, Line::new(rat(1), rat(0)));
        let h = line_through(&Point::from_ints(0, 0), &Point::from_ints(4, 0)).unwrap();
        assert_eq!(h, Line::new(rat(0), rat(0)));
        assert_eq!(
            line_through(&Point::from_ints(1, 2), &Point::from_ints(1, 5)),
            Err(Error::VerticalLine)
        );
    }

    #[test]
    fn intersect_examples() {
        let p = intersect(&Line::new(rat(4), rat(0)), &Line::new(rat(1), rat(1))).unwrap();
        assert_eq!(p, Point::new(ratio(-1, 3), ratio(-4, 3)));
        assert_eq!(
            intersect(&Line::new(rat(2), rat(3)), &Line::new(rat(2), rat(5))),
            Err(Error::Parallel)
        );
        assert_eq!(
            intersect(&Line::new(rat(0), rat(0)), &Line::new(rat(0), rat(0))),
            Err(Error::Coincident)
        );
    }

    #[test]
    fn proper_crossing_examples() {
        let s = |a: (i64, i64), b: (i64, i64)| {
            Segment::new(Point::from_ints(a.0, a.1), Point::from_ints(b.0, b.1))
        };
        assert!(segments_properly_cross(
            &s((0, 0), (2, 2)),
            &s((0, 2), (2, 0))
        ));
        assert!(!segments_properly_cross(
            &s((0, 0), (1, 1)),
            &s((1, 1), (2, 0))
        ));
        // Q4 edges A-D and B-D share endpoint D
        assert!(!segments_properly_cross(
            &s((0, 0), (1, 1)),
            &s((4, 0), (1, 1))
        ));
    }

    #[test]
    fn rational_display() {
        assert_eq!(rat_to_string(&rat(-7)), "-7");
        assert_eq!(rat_to_string(&ratio(2, 4)), "1/2");
        assert_eq!(rat_to_string(&ratio(-4, 3)), "-4/3");
    }
}
