//! The instance file format.
//!
//! UTF-8 text; `#` starts a comment line; the first data line is `n`,
//! followed by n lines of `x y`, each coordinate an integer or `p/q` with
//! q > 0. Writing emits canonical form: lowest terms, single spaces, one
//! trailing newline, no comments.

use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Signed;

use crate::geom::{rat_to_string, Point, Rat};
use crate::instance::Instance;
use crate::Error;

fn parse_rat(tok: &str, line: usize) -> Result<Rat, Error> {
    let bad = |msg: &str| Error::Syntax {
        line,
        msg: msg.to_string(),
    };
    match tok.split_once('/') {
        None => {
            let v = BigInt::from_str(tok).map_err(|_| bad(&format!("invalid integer `{tok}`")))?;
            Ok(Rat::from_integer(v))
        }
        Some((p, q)) => {
            let p =
                BigInt::from_str(p).map_err(|_| bad(&format!("invalid numerator in `{tok}`")))?;
            let q =
                BigInt::from_str(q).map_err(|_| bad(&format!("invalid denominator in `{tok}`")))?;
            if !q.is_positive() {
                return Err(Error::BadRational { line });
            }
            Ok(Rat::new(p, q))
        }
    }
}

/// Parses and validates an instance, reporting the 1-based line number of any
/// syntax problem.
pub fn parse_instance(text: &str) -> Result<Instance, Error> {
    let mut data = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (n_line, n_tok) = data.next().ok_or(Error::Syntax {
        line: 0,
        msg: "empty file".into(),
    })?;
    let n: usize = n_tok.parse().map_err(|_| Error::Syntax {
        line: n_line,
        msg: format!("invalid count `{n_tok}`"),
    })?;

    let mut points = Vec::with_capacity(n);
    for (line, text) in data {
        if points.len() == n {
            return Err(Error::CountMismatch {
                expected: n,
                found: points.len() + 1,
            });
        }
        let mut toks = text.split_whitespace();
        let (x, y) = match (toks.next(), toks.next(), toks.next()) {
            (Some(x), Some(y), None) => (x, y),
            _ => {
                return Err(Error::Syntax {
                    line,
                    msg: format!("expected `x y`, got `{text}`"),
                });
            }
        };
        points.push(Point::new(parse_rat(x, line)?, parse_rat(y, line)?));
    }
    if points.len() != n {
        return Err(Error::CountMismatch {
            expected: n,
            found: points.len(),
        });
    }
    Instance::new(points)
}

/// Canonical text form; `parse(write(i)) == i` and writing a parsed file
/// canonicalizes it.
pub fn write_instance(inst: &Instance) -> String {
    let mut out = format!("{}\n", inst.n());
    for p in inst.points() {
        out.push_str(&rat_to_string(&p.x));
        out.push(' ');
        out.push_str(&rat_to_string(&p.y));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_q4() {
        let inst = parse_instance("4\n0 0\n4 0\n2 3\n1 1").unwrap();
        assert_eq!(inst.n(), 4);
        assert_eq!(inst.point(2), &Point::from_ints(2, 3));
    }

    #[test]
    fn comments_and_blank_lines_are_skipped() {
        let inst = parse_instance("# demo\n\n2\n# interior comment\n0 0\n\n1 1/2\n").unwrap();
        assert_eq!(
            inst.point(1),
            &Point::new(crate::geom::rat(1), crate::geom::ratio(1, 2))
        );
    }

    #[test]
    fn shared_x_is_a_validation_error() {
        match parse_instance("2\n0 0\n0 1") {
            Err(Error::GeneralPosition(v)) => assert_eq!(v.len(), 1),
            other => panic!("expected general-position violation, got {other:?}"),
        }
    }

    #[test]
    fn zero_denominator_is_bad_rational() {
        assert_eq!(
            parse_instance("1\n1/0 2"),
            Err(Error::BadRational { line: 2 })
        );
        assert_eq!(
            parse_instance("2\n1/0 2\n3 4"),
            Err(Error::BadRational { line: 2 })
        );
        assert_eq!(
            parse_instance("2\n1/-2 2\n3 4"),
            Err(Error::BadRational { line: 2 })
        );
    }

    #[test]
    fn undersized_instance_is_rejected() {
        assert_eq!(parse_instance("1\n5 2"), Err(Error::TooFewPoints { n: 1 }));
    }

    #[test]
    fn count_mismatch() {
        assert_eq!(
            parse_instance("3\n0 0\n1 1"),
            Err(Error::CountMismatch {
                expected: 3,
                found: 2
            })
        );
        assert!(matches!(
            parse_instance("2\n0 0\n1 1\n2 2"),
            Err(Error::CountMismatch {
                expected: 2,
                found: 3
            })
        ));
    }

    #[test]
    fn write_canonicalizes() {
        let inst = parse_instance("#x\n4\n0   0\n8/2 0\n2 3\n1 1").unwrap();
        assert_eq!(write_instance(&inst), "4\n0 0\n4 0\n2 3\n1 1\n");
        let again = parse_instance(&write_instance(&inst)).unwrap();
        assert_eq!(inst, again);
    }
}
