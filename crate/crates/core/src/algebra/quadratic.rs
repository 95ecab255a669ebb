//! Elements `a + b·√d` of a quadratic field `Q(√d)`; `d` is supplied by the caller.

use std::cmp::Ordering;

use num_traits::{One, Signed, Zero};

use super::rational::{rational_sqrt, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Quad {
    pub a: Rational,
    pub b: Rational,
}

impl Quad {
    pub fn new(a: Rational, b: Rational) -> Self {
        Quad { a, b }
    }

    pub fn rational(a: Rational) -> Self {
        Quad { a, b: Rational::zero() }
    }

    pub fn zero() -> Self {
        Quad::rational(Rational::zero())
    }

    pub fn one() -> Self {
        Quad::rational(Rational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn add(&self, o: &Quad) -> Quad {
        Quad::new(&self.a + &o.a, &self.b + &o.b)
    }

    pub fn sub(&self, o: &Quad) -> Quad {
        Quad::new(&self.a - &o.a, &self.b - &o.b)
    }

    pub fn neg(&self) -> Quad {
        Quad::new(-&self.a, -&self.b)
    }

    pub fn scale(&self, q: &Rational) -> Quad {
        Quad::new(&self.a * q, &self.b * q)
    }

    pub fn mul(&self, o: &Quad, d: &Rational) -> Quad {
        Quad::new(
            &self.a * &o.a + &self.b * &o.b * d,
            &self.a * &o.b + &self.b * &o.a,
        )
    }

    /// The Galois conjugate `a - b√d`.
    pub fn sigma(&self) -> Quad {
        Quad::new(self.a.clone(), -&self.b)
    }

    /// `(a + b√d)(a - b√d)`.
    pub fn norm(&self, d: &Rational) -> Rational {
        &self.a * &self.a - &self.b * &self.b * d
    }

    pub fn inv(&self, d: &Rational) -> Option<Quad> {
        let n = self.norm(d);
        if n.is_zero() {
            return None;
        }
        Some(self.sigma().scale(&n.recip()))
    }

    /// Exact sign of `a + b√d` as a real number; requires `d >= 0` and `d` not a
    /// perfect square (or `b = 0`).
    pub fn real_sign(&self, d: &Rational) -> Ordering {
        let sa = sign(&self.a);
        let sb = if d.is_zero() { Ordering::Equal } else { sign(&self.b) };
        if sb == Ordering::Equal {
            return sa;
        }
        if sa == Ordering::Equal || sa == sb {
            return sb;
        }
        let lhs = &self.a * &self.a;
        let rhs = &self.b * &self.b * d;
        match lhs.cmp(&rhs) {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            Ordering::Equal => Ordering::Equal,
        }
    }

    /// A square root inside `Q(√d)` when one exists (either sign may be returned).
    pub fn sqrt(&self, d: &Rational) -> Option<Quad> {
        if self.b.is_zero() || d.is_zero() {
            if let Some(r) = rational_sqrt(&self.a) {
                return Some(Quad::rational(r));
            }
            if d.is_zero() {
                return None;
            }
            // (e√d)^2 = e^2 d
            let e = rational_sqrt(&(&self.a / d))?;
            return Some(Quad::new(Rational::zero(), e));
        }
        let n = rational_sqrt(&self.norm(d))?;
        let two = Rational::from_integer(2.into());
        for cand in [(&self.a + &n) / &two, (&self.a - &n) / &two] {
            if let Some(c) = rational_sqrt(&cand) {
                if c.is_zero() {
                    continue;
                }
                let e = &self.b / (&c * &two);
                let root = Quad::new(c, e);
                if root.mul(&root, d) == *self {
                    return Some(root);
                }
            }
        }
        None
    }
}

pub(crate) fn sign(q: &Rational) -> Ordering {
    if q.is_positive() {
        Ordering::Greater
    } else if q.is_negative() {
        Ordering::Less
    } else {
        Ordering::Equal
    }
}
