use std::fmt;
use std::str::FromStr;

use super::Graph;
use crate::error::{Error, Result};

/// The named constructions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GraphFamily {
    /// Prime `q`, or `q = p^2` with `p <= 13`; needs `q = 1 mod 4`.
    Paley(u64),
    /// Rook's graph on an `n x n` board.
    Lattice(usize),
    /// Line graph of `K_n`.
    Triangular(usize),
    Petersen,
    Cycle(usize),
    Cube,
    /// `m` disjoint copies of `K_s`.
    MK { m: usize, s: usize },
    Complement(Box<GraphFamily>),
    LineGraph(Box<GraphFamily>),
}

pub fn build_named(family: &GraphFamily) -> Result<Graph> {
    let bad = |msg: String| Err(Error::InvalidConstruction(msg));
    match family {
        GraphFamily::Paley(q) => paley(*q),
        &GraphFamily::Lattice(n) => {
            if n < 2 {
                return bad(format!("lattice({n}) needs n >= 2"));
            }
            Ok(Graph::from_fn(n * n, |a, b| (a / n == b / n) != (a % n == b % n)))
        }
        &GraphFamily::Triangular(n) => {
            if n < 4 {
                return bad(format!("triangular({n}) needs n >= 4"));
            }
            let pairs = pairs(n);
            Ok(Graph::from_fn(pairs.len(), |a, b| shares(pairs[a], pairs[b])))
        }
        GraphFamily::Petersen => {
            let pairs = pairs(5);
            Ok(Graph::from_fn(10, |a, b| !shares(pairs[a], pairs[b])))
        }
        &GraphFamily::Cycle(n) => {
            if n < 3 {
                return bad(format!("cycle({n}) needs n >= 3"));
            }
            Ok(Graph::from_fn(n, |a, b| b - a == 1 || b - a == n - 1))
        }
        GraphFamily::Cube => Ok(Graph::from_fn(8, |a, b| (a ^ b).count_ones() == 1)),
        &GraphFamily::MK { m, s } => {
            if m == 0 || s == 0 {
                return bad(format!("mK({m},{s}) needs m, s >= 1"));
            }
            Ok(Graph::from_fn(m * s, |a, b| a / s == b / s))
        }
        GraphFamily::Complement(g) => Ok(build_named(g)?.complement()),
        GraphFamily::LineGraph(g) => build_named(g)?.line_graph(),
    }
}

fn pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect()
}

fn shares(p: (usize, usize), q: (usize, usize)) -> bool {
    p.0 == q.0 || p.0 == q.1 || p.1 == q.0 || p.1 == q.1
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

fn paley(q: u64) -> Result<Graph> {
    if q % 4 != 1 {
        return Err(Error::InvalidConstruction(format!("paley({q}) needs q = 1 mod 4")));
    }
    if is_prime(q) {
        let squares: Vec<bool> = {
            let mut s = vec![false; q as usize];
            for x in 1..q {
                s[(x * x % q) as usize] = true;
            }
            s
        };
        return Ok(Graph::from_fn(q as usize, |a, b| squares[(b - a) % q as usize]));
    }
    let p = (1..=13).find(|p| p * p == q && is_prime(*p)).ok_or_else(|| {
        Error::InvalidConstruction(format!("paley({q}): only primes and squares of primes <= 13"))
    })?;
    // GF(p^2) = GF(p)[w] with w^2 = r for a non-residue r
    let r = (2..p).find(|&r| (1..p).all(|x| x * x % p != r)).unwrap();
    let mul = |(a, b): (u64, u64), (c, d): (u64, u64)| ((a * c + b * d % p * r) % p, (a * d + b * c) % p);
    let mut squares = vec![false; q as usize];
    for a in 0..p {
        for b in 0..p {
            if (a, b) != (0, 0) {
                let (c, d) = mul((a, b), (a, b));
                squares[(c * p + d) as usize] = true;
            }
        }
    }
    Ok(Graph::from_fn(q as usize, |i, j| {
        let (a, b) = (i as u64 / p, i as u64 % p);
        let (c, d) = (j as u64 / p, j as u64 % p);
        squares[(((c + p - a) % p) * p + (d + p - b) % p) as usize]
    }))
}

impl fmt::Display for GraphFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphFamily::Paley(q) => write!(f, "paley({q})"),
            GraphFamily::Lattice(n) => write!(f, "lattice({n})"),
            GraphFamily::Triangular(n) => write!(f, "triangular({n})"),
            GraphFamily::Petersen => write!(f, "petersen"),
            GraphFamily::Cycle(n) => write!(f, "cycle({n})"),
            GraphFamily::Cube => write!(f, "cube"),
            GraphFamily::MK { m, s } => write!(f, "mK({m},{s})"),
            GraphFamily::Complement(g) => write!(f, "complement({g})"),
            GraphFamily::LineGraph(g) => write!(f, "line_graph({g})"),
        }
    }
}

/// Parses the `Display` form, e.g. `line_graph(petersen)` or `mK(3,4)`.
impl FromStr for GraphFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::InvalidConstruction(format!("unknown graph family {s:?}"));
        let (name, args) = match s.split_once('(') {
            Some((name, rest)) => (name.trim(), Some(rest.strip_suffix(')').ok_or_else(bad)?)),
            None => (s, None),
        };
        let num = |a: Option<&str>| -> Result<usize> { a.ok_or_else(bad)?.trim().parse().map_err(|_| bad()) };
        Ok(match (name.to_ascii_lowercase().as_str(), args) {
            ("petersen", None) => GraphFamily::Petersen,
            ("cube", None) => GraphFamily::Cube,
            ("paley", a) => GraphFamily::Paley(num(a)? as u64),
            ("lattice", a) => GraphFamily::Lattice(num(a)?),
            ("triangular", a) => GraphFamily::Triangular(num(a)?),
            ("cycle", a) => GraphFamily::Cycle(num(a)?),
            ("mk", Some(a)) => {
                let (m, k) = a.split_once(',').ok_or_else(bad)?;
                GraphFamily::MK { m: num(Some(m))?, s: num(Some(k))? }
            }
            ("complement", Some(a)) => GraphFamily::Complement(Box::new(a.parse()?)),
            ("line_graph", Some(a)) => GraphFamily::LineGraph(Box::new(a.parse()?)),
            _ => return Err(bad()),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders() {
        let cases = [
            ("paley(13)", 13),
            ("paley(25)", 25),
            ("lattice(4)", 16),
            ("triangular(6)", 15),
            ("line_graph(petersen)", 15),
            ("complement(cube)", 8),
            ("mK(3,4)", 12),
        ];
        for (s, n) in cases {
            let f: GraphFamily = s.parse().unwrap();
            assert_eq!(f.to_string().to_lowercase(), s.to_lowercase());
            assert_eq!(build_named(&f).unwrap().order(), n, "{s}");
        }
    }

    #[test]
    fn invalid_parameters() {
        for f in [GraphFamily::Paley(11), GraphFamily::Paley(45), GraphFamily::Paley(289), GraphFamily::Cycle(2)] {
            assert!(matches!(build_named(&f), Err(Error::InvalidConstruction(_))), "{f}");
        }
        assert!("heawood".parse::<GraphFamily>().is_err());
    }
}
