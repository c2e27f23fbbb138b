//! Point-set instances and general-position validation.

use crate::geom::{orient, Point};
use crate::Error;

/// A general-position violation, naming the offending point indices.
/// Violations are data, not exceptions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Violation {
    Collinear(usize, usize, usize),
    SharedX(usize, usize),
}

/// Checks that all point triples are non-collinear and all x-coordinates are
/// distinct. Returns every violation found.
pub fn validate_general_position(points: &[Point]) -> Vec<Violation> {
    let n = points.len();
    let mut violations = Vec::new();
    let mut by_x: Vec<usize> = (0..n).collect();
    by_x.sort_by(|&i, &j| points[i].x.cmp(&points[j].x));
    for w in by_x.windows(2) {
        if points[w[0]].x == points[w[1]].x {
            let (i, j) = (w[0].min(w[1]), w[0].max(w[1]));
            violations.push(Violation::SharedX(i, j));
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                if orient(&points[i], &points[j], &points[k]) == 0 {
                    violations.push(Violation::Collinear(i, j, k));
                }
            }
        }
    }
    violations
}

/// A validated point set. Point labels are their indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    points: Vec<Point>,
}

impl Instance {
    /// Validates n >= 2 and general position.
    pub fn new(points: Vec<Point>) -> Result<Self, Error> {
        if points.len() < 2 {
            return Err(Error::TooFewPoints { n: points.len() });
        }
        let violations = validate_general_position(&points);
        if !violations.is_empty() {
            return Err(Error::GeneralPosition(violations));
        }
        Ok(Instance { points })
    }

    pub fn n(&self) -> usize {
        self.points.len()
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn point(&self, i: usize) -> &Point {
        &self.points[i]
    }

    /// The instance reflected through the origin. Reflection exchanges the
    /// above/below side of every separating line, so below-side statements
    /// about `self` are above-side statements about the reflection.
    pub fn reflected(&self) -> Instance {
        Instance {
            points: self.points.iter().map(Point::reflected).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::Point;

    pub fn q4_points() -> Vec<Point> {
        vec![
            Point::from_ints(0, 0),
            Point::from_ints(4, 0),
            Point::from_ints(2, 3),
            Point::from_ints(1, 1),
        ]
    }

    #[test]
    fn q4_is_valid() {
        assert!(validate_general_position(&q4_points()).is_empty());
        assert!(Instance::new(q4_points()).is_ok());
    }

    #[test]
    fn collinear_triple_reported() {
        let pts = vec![
            Point::from_ints(0, 0),
            Point::from_ints(1, 1),
            Point::from_ints(2, 2),
            Point::from_ints(5, 0),
        ];
        assert_eq!(
            validate_general_position(&pts),
            vec![Violation::Collinear(0, 1, 2)]
        );
    }

    #[test]
    fn shared_x_reported() {
        let pts = vec![
            Point::from_ints(1, 0),
            Point::from_ints(1, 3),
            Point::from_ints(2, 2),
        ];
        assert_eq!(
            validate_general_position(&pts),
            vec![Violation::SharedX(0, 1)]
        );
    }

    #[test]
    fn too_few_points() {
        assert_eq!(
            Instance::new(vec![Point::from_ints(0, 0)]),
            Err(Error::TooFewPoints { n: 1 })
        );
    }
}
