//! Exact arithmetic in `Q(√d1)(i√d2)`, a field of degree at most four.
//!
//! Elements are stored as `a0 + a1·s + (b0 + b1·s)·t` where `s = √d1` and
//! `t = i·√d2`, with `d2 = c0 + c1·s`. Square roots are principal, so for the
//! usual case `d1 >= 0`, `d2 > 0` the generator `t` is purely imaginary and
//! complex conjugation negates `(b0, b1)`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::{Arc, LazyLock};

use num_bigint::BigInt;
use num_complex::{Complex, Complex64};
use num_integer::Integer;
use num_traits::{Float, One, Signed, Zero};

use super::quadratic::{sign, Quad};
use super::rational::{
    format_rational, lcm_denoms, parse_rational, squarefree, squarefree_int, to_f64, Rational,
};
use crate::error::{Error, Result};

/// Shared handle to a descriptor; elements of one field share one `Tower`.
pub type Tower = Arc<TowerDescriptor>;

static TRIVIAL: LazyLock<Tower> = LazyLock::new(|| Arc::new(TowerDescriptor::build(&Rational::zero(), &[Rational::zero(), Rational::zero()])));

/// Radicands of a tower, normalized: `d1` is zero or a square-free integer, and
/// `d2` has no rational square factor left in its content.
#[derive(Clone)]
pub struct TowerDescriptor {
    d1: Rational,
    d2: [Rational; 2],
    // conj(t) = conj_factor * t, when conjugation maps the field to itself
    conj_factor: Option<Quad>,
    raw_s: Quad,
    raw_t: [Quad; 2],
    s_emb: Complex64,
    t_emb: Complex64,
}

impl PartialEq for TowerDescriptor {
    fn eq(&self, other: &Self) -> bool {
        self.d1 == other.d1 && self.d2 == other.d2
    }
}

impl Eq for TowerDescriptor {}

impl fmt::Debug for TowerDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Tower(d1={}, d2={} + {}·√d1)", self.d1, self.d2[0], self.d2[1])
    }
}

impl TowerDescriptor {
    /// The field of rationals.
    pub fn rational() -> Tower {
        TRIVIAL.clone()
    }

    /// Builds `Q(√d1)(i√d2)` where `d2 = c0 + c1·√d1` must embed as a
    /// non-negative real and `d1 >= 0`.
    pub fn new(d1: Rational, d2: [Rational; 2]) -> Result<Tower> {
        if d1.is_negative() {
            return Err(Error::NegativeRadicand(format!("d1 = {d1}")));
        }
        if Quad::new(d2[0].clone(), d2[1].clone()).real_sign(&d1) == Ordering::Less {
            return Err(Error::NegativeRadicand(format!(
                "d2 = {} + {}·√{}",
                d2[0], d2[1], d1
            )));
        }
        Ok(Arc::new(Self::build(&d1, &d2)))
    }

    /// Same as [`TowerDescriptor::new`] but accepts radicands of either sign.
    ///
    /// The resulting field may be a real quartic field or a non-Galois complex
    /// one; conjugation is then only partially available.
    pub fn general(d1: Rational, d2: [Rational; 2]) -> Tower {
        Arc::new(Self::build(&d1, &d2))
    }

    /// The tower `Q(√d1)`.
    pub fn real_quadratic(d1: Rational) -> Result<Tower> {
        Self::new(d1, [Rational::zero(), Rational::zero()])
    }

    fn build(d1_raw: &Rational, d2_raw: &[Rational; 2]) -> Self {
        let (f, core) = squarefree(d1_raw);
        let (d1, raw_s) = if core.is_zero() {
            (Rational::zero(), Quad::zero())
        } else if core.is_one() {
            (Rational::zero(), Quad::rational(f))
        } else {
            (Rational::from_integer(core), Quad::new(Rational::zero(), f))
        };
        let s_emb = sqrt_c(Complex64::new(to_f64(&d1), 0.0));
        // d2 re-expressed over the normalized s
        let big_d2 = Quad::rational(d2_raw[0].clone()).add(&raw_s.scale(&d2_raw[1]));
        let big_d2 = if d1.is_zero() {
            Quad::rational(big_d2.a)
        } else {
            big_d2
        };
        let d2_emb = quad_emb(&big_d2, s_emb);
        let t_target = Complex64::i() * sqrt_c(d2_emb);

        let mut desc = TowerDescriptor {
            d1,
            d2: [Rational::zero(), Rational::zero()],
            conj_factor: Some(Quad::one()),
            raw_s,
            raw_t: [Quad::zero(), Quad::zero()],
            s_emb,
            t_emb: Complex64::new(0.0, 0.0),
        };
        if big_d2.is_zero() {
            return desc;
        }
        if let Some(r) = big_d2.neg().sqrt(&desc.d1) {
            // -d2 is a square in the base: no extension needed
            let r_emb = quad_emb(&r, s_emb);
            let r = if (r_emb - t_target).norm() <= (r_emb + t_target).norm() {
                r
            } else {
                r.neg()
            };
            desc.raw_t = [r, Quad::zero()];
            return desc;
        }
        let (d2, scale) = if big_d2.is_rational() {
            let (g, core2) = squarefree(&big_d2.a);
            ([Rational::from_integer(core2), Rational::zero()], g)
        } else {
            let l = Rational::from_integer(lcm_denoms([&big_d2.a, &big_d2.b]));
            let c0 = (&big_d2.a * &l * &l).to_integer();
            let c1 = (&big_d2.b * &l * &l).to_integer();
            let (h, _) = squarefree_int(&c0.gcd(&c1));
            let h2 = &h * &h;
            (
                [Rational::from_integer(c0 / &h2), Rational::from_integer(c1 / &h2)],
                Rational::from_integer(h) / l,
            )
        };
        desc.d2 = d2;
        desc.t_emb = Complex64::i() * sqrt_c(quad_emb(&desc.d2_quad(), s_emb));
        desc.raw_t = [Quad::zero(), Quad::rational(scale)];
        desc.conj_factor = desc.compute_conj_factor();
        desc
    }

    fn compute_conj_factor(&self) -> Option<Quad> {
        let d2 = self.d2_quad();
        if !self.d1.is_negative() {
            return Some(match d2.real_sign(&self.d1) {
                Ordering::Greater => Quad::rational(-Rational::one()),
                _ => Quad::one(),
            });
        }
        // conj(t)^2 = -sigma(d2); need sigma(d2)/d2 to be a square in Q(s)
        let q = d2.sigma().mul(&d2.inv(&self.d1)?, &self.d1);
        let rho = q.sqrt(&self.d1)?;
        let rho_emb = quad_emb(&rho, self.s_emb);
        let want = self.t_emb.conj();
        Some(if (rho_emb * self.t_emb - want).norm() <= (rho_emb * self.t_emb + want).norm() {
            rho
        } else {
            rho.neg()
        })
    }

    pub fn d1(&self) -> &Rational {
        &self.d1
    }

    pub fn d2(&self) -> &[Rational; 2] {
        &self.d2
    }

    fn d2_quad(&self) -> Quad {
        Quad::new(self.d2[0].clone(), self.d2[1].clone())
    }

    pub fn has_base(&self) -> bool {
        !self.d1.is_zero()
    }

    pub fn has_ext(&self) -> bool {
        !(self.d2[0].is_zero() && self.d2[1].is_zero())
    }

    pub fn is_trivial(&self) -> bool {
        !self.has_base() && !self.has_ext()
    }

    pub fn degree(&self) -> usize {
        (1 + self.has_base() as usize) * (1 + self.has_ext() as usize)
    }

    /// True when complex conjugation maps this field onto itself.
    pub fn is_conjugation_closed(&self) -> bool {
        !self.has_ext() || self.conj_factor.is_some()
    }

    /// `√d1` for the radicand as originally supplied.
    pub fn sqrt_d1(self: &Arc<Self>) -> TowerElement {
        TowerElement::from_parts(self.clone(), self.raw_s.clone(), Quad::zero())
    }

    /// `i√d2` for the radicand as originally supplied.
    pub fn i_sqrt_d2(self: &Arc<Self>) -> TowerElement {
        let [lo, hi] = self.raw_t.clone();
        TowerElement::from_parts(self.clone(), lo, hi)
    }

    /// Element from coordinates relative to the radicands as originally supplied.
    pub fn element_raw(self: &Arc<Self>, c: [Rational; 4]) -> TowerElement {
        let [a0, a1, b0, b1] = c;
        let s = self.sqrt_d1();
        let lo = TowerElement::from_parts(self.clone(), Quad::rational(a0), Quad::zero())
            + &s * &TowerElement::rational(a1);
        let hi = TowerElement::from_parts(self.clone(), Quad::rational(b0), Quad::zero())
            + &s * &TowerElement::rational(b1);
        lo + hi * self.i_sqrt_d2()
    }

    fn contains(&self, other: &TowerDescriptor) -> bool {
        if self == other || other.is_trivial() {
            return true;
        }
        if self.d1 == other.d1 && !other.has_ext() {
            return true;
        }
        !other.has_base() && other.d2[1].is_zero() && self.d2 == other.d2
    }
}

fn sqrt_c(z: Complex64) -> Complex64 {
    if z.im == 0.0 && z.re >= 0.0 {
        Complex64::new(z.re.sqrt(), 0.0)
    } else if z.im == 0.0 {
        Complex64::new(0.0, (-z.re).sqrt())
    } else {
        z.sqrt()
    }
}

fn quad_emb(q: &Quad, s: Complex64) -> Complex64 {
    Complex64::new(to_f64(&q.a), 0.0) + s * to_f64(&q.b)
}

/// Least common refinement of two towers, when one contains the other.
pub fn common_tower(a: &Tower, b: &Tower) -> Result<Tower> {
    if Arc::ptr_eq(a, b) || a.contains(b) {
        Ok(a.clone())
    } else if b.contains(a) {
        Ok(b.clone())
    } else {
        Err(Error::IncompatibleTower(format!("{a:?}"), format!("{b:?}")))
    }
}

/// An exact element of a quadratic tower.
#[derive(Clone)]
pub struct TowerElement {
    tower: Tower,
    lo: Quad,
    hi: Quad,
}

impl TowerElement {
    pub(crate) fn from_parts(tower: Tower, lo: Quad, hi: Quad) -> Self {
        TowerElement { tower, lo, hi }
    }

    /// Element with normalized coordinates `(a0, a1, b0, b1)`.
    pub fn from_coords(tower: &Tower, c: [Rational; 4]) -> Result<Self> {
        let [a0, a1, b0, b1] = c;
        if !tower.has_base() && !(a1.is_zero() && b1.is_zero()) {
            return Err(Error::InvalidConstruction("√d1 coordinate in a tower with d1 = 0".into()));
        }
        if !tower.has_ext() && !(b0.is_zero() && b1.is_zero()) {
            return Err(Error::InvalidConstruction("i√d2 coordinate in a tower with d2 = 0".into()));
        }
        Ok(Self::from_parts(tower.clone(), Quad::new(a0, a1), Quad::new(b0, b1)))
    }

    pub fn rational(q: Rational) -> Self {
        Self::from_parts(TowerDescriptor::rational(), Quad::rational(q), Quad::zero())
    }

    pub fn from_i64(n: i64) -> Self {
        Self::rational(Rational::from_integer(BigInt::from(n)))
    }

    pub fn zero() -> Self {
        Self::from_i64(0)
    }

    pub fn one() -> Self {
        Self::from_i64(1)
    }

    pub fn tower(&self) -> &Tower {
        &self.tower
    }

    pub fn coords(&self) -> [Rational; 4] {
        [self.lo.a.clone(), self.lo.b.clone(), self.hi.a.clone(), self.hi.b.clone()]
    }

    pub fn is_zero(&self) -> bool {
        self.lo.is_zero() && self.hi.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.hi.is_zero() && self.lo.b.is_zero() && self.lo.a.is_one()
    }

    /// The value as a rational, when it is one.
    pub fn as_rational(&self) -> Option<Rational> {
        (self.hi.is_zero() && self.lo.b.is_zero()).then(|| self.lo.a.clone())
    }

    /// Re-expresses this element in a tower that contains its own.
    pub fn lift_to(&self, tower: &Tower) -> Result<Self> {
        if tower.contains(&self.tower) {
            Ok(Self::from_parts(tower.clone(), self.lo.clone(), self.hi.clone()))
        } else {
            Err(Error::IncompatibleTower(format!("{:?}", self.tower), format!("{tower:?}")))
        }
    }

    fn d1(&self) -> &Rational {
        &self.tower.d1
    }

    fn binary(&self, o: &Self) -> Result<Tower> {
        common_tower(&self.tower, &o.tower)
    }

    pub fn checked_add(&self, o: &Self) -> Result<Self> {
        let t = self.binary(o)?;
        Ok(Self::from_parts(t, self.lo.add(&o.lo), self.hi.add(&o.hi)))
    }

    pub fn checked_sub(&self, o: &Self) -> Result<Self> {
        let t = self.binary(o)?;
        Ok(Self::from_parts(t, self.lo.sub(&o.lo), self.hi.sub(&o.hi)))
    }

    pub fn checked_mul(&self, o: &Self) -> Result<Self> {
        let t = self.binary(o)?;
        let d1 = &t.d1;
        // t^2 = -d2
        let tt = t.d2_quad().neg();
        let bd = self.hi.mul(&o.hi, d1);
        let lo = self.lo.mul(&o.lo, d1).add(&bd.mul(&tt, d1));
        let hi = self.lo.mul(&o.hi, d1).add(&self.hi.mul(&o.lo, d1));
        Ok(Self::from_parts(t, lo, hi))
    }

    pub fn checked_inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let d1 = self.d1();
        // (A + Bt)^-1 = (A - Bt) / (A^2 + B^2 d2)
        let d2 = self.tower.d2_quad();
        let n = self
            .lo
            .mul(&self.lo, d1)
            .add(&self.hi.mul(&self.hi, d1).mul(&d2, d1));
        let ninv = n.inv(d1).ok_or(Error::DivisionByZero)?;
        Ok(Self::from_parts(
            self.tower.clone(),
            self.lo.mul(&ninv, d1),
            self.hi.neg().mul(&ninv, d1),
        ))
    }

    pub fn checked_div(&self, o: &Self) -> Result<Self> {
        self.checked_mul(&o.checked_inv()?)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = TowerElement::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Complex conjugate, when it lies in the same field.
    pub fn conj(&self) -> Option<Self> {
        let base = |q: &Quad| if self.d1().is_negative() { q.sigma() } else { q.clone() };
        let lo = base(&self.lo);
        if self.hi.is_zero() {
            return Some(Self::from_parts(self.tower.clone(), lo, Quad::zero()));
        }
        let r = self.tower.conj_factor.as_ref()?;
        let hi = base(&self.hi).mul(r, self.d1());
        Some(Self::from_parts(self.tower.clone(), lo, hi))
    }

    /// Exact test of `|u| = 1`.
    ///
    /// When conjugation leaves the field, `u·ū = 1` forces `u` into the base
    /// `Q(√d1)`, where the conjugate is always available.
    pub fn is_unimodular(&self) -> bool {
        match self.conj() {
            Some(c) => (self * &c).is_one(),
            None => false,
        }
    }

    pub fn is_real(&self) -> bool {
        self.conj().is_some_and(|c| c == *self)
    }

    /// Exact sign of a real element of a real-embedded tower (`d1 >= 0`).
    pub fn real_sign(&self) -> Result<Ordering> {
        let d1 = self.d1();
        if d1.is_negative() {
            if self.hi.is_zero() && self.lo.b.is_zero() {
                return Ok(sign(&self.lo.a));
            }
            return Err(Error::NotReal);
        }
        if self.hi.is_zero() {
            return Ok(self.lo.real_sign(d1));
        }
        // t real only when d2 < 0, and then t = i·i√|d2| = -√(-d2)
        if self.tower.d2_quad().real_sign(d1) != Ordering::Less {
            return Err(Error::NotReal);
        }
        let sa = self.lo.real_sign(d1);
        let sb = self.hi.neg().real_sign(d1);
        if sb == Ordering::Equal {
            return Ok(sa);
        }
        if sa == Ordering::Equal || sa == sb {
            return Ok(sb);
        }
        let big_t = self.tower.d2_quad().neg();
        let diff = self
            .lo
            .mul(&self.lo, d1)
            .sub(&self.hi.mul(&self.hi, d1).mul(&big_t, d1));
        Ok(match diff.real_sign(d1) {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            Ordering::Equal => Ordering::Equal,
        })
    }

    /// Exact comparison of two real elements.
    pub fn cmp_real(&self, o: &Self) -> Result<Ordering> {
        self.checked_sub(o)?.real_sign()
    }

    pub fn embed_complex(&self) -> Complex64 {
        let d = &self.tower;
        quad_emb(&self.lo, d.s_emb) + quad_emb(&self.hi, d.s_emb) * d.t_emb
    }

    pub fn embed<F: Float>(&self) -> Complex<F> {
        let z = self.embed_complex();
        Complex::new(F::from(z.re).unwrap(), F::from(z.im).unwrap())
    }

    /// Moves the element to the smallest sub-tower spanned by its nonzero coordinates.
    pub fn simplify(&self) -> Self {
        let d = &self.tower;
        if self.hi.is_zero() {
            if self.lo.b.is_zero() {
                return Self::rational(self.lo.a.clone());
            }
            let t = TowerDescriptor::general(d.d1.clone(), [Rational::zero(), Rational::zero()]);
            return Self::from_parts(t, self.lo.clone(), Quad::zero());
        }
        if self.lo.b.is_zero() && self.hi.b.is_zero() && d.d2[1].is_zero() {
            let t = TowerDescriptor::general(Rational::zero(), d.d2.clone());
            return Self::from_parts(t, self.lo.clone(), self.hi.clone());
        }
        self.clone()
    }

    /// Monic minimal polynomial over Q, coefficients from the constant term up.
    pub fn minimal_polynomial(&self) -> Vec<Rational> {
        let d = &self.tower;
        let active: Vec<usize> = (0..4)
            .filter(|&i| match i {
                0 => true,
                1 => d.has_base(),
                2 => d.has_ext(),
                _ => d.has_base() && d.has_ext(),
            })
            .collect();
        let vec_of = |e: &TowerElement| -> Vec<Rational> {
            let c = e.coords();
            active.iter().map(|&i| c[i].clone()).collect()
        };
        let mut powers = vec![vec_of(&TowerElement::one())];
        let mut cur = TowerElement::one();
        for k in 1..=active.len() {
            cur = &cur * self;
            let target = vec_of(&cur);
            if let Some(c) = solve_in_span(&powers, &target) {
                let mut poly: Vec<Rational> = c.into_iter().map(|x| -x).collect();
                poly.push(Rational::one());
                debug_assert_eq!(poly.len(), k + 1);
                return poly;
            }
            powers.push(target);
        }
        unreachable!("element of a degree-{} field has no minimal polynomial", active.len())
    }
}

/// Solves `sum c_j cols[j] = target` exactly, if consistent.
fn solve_in_span(cols: &[Vec<Rational>], target: &[Rational]) -> Option<Vec<Rational>> {
    let rows = target.len();
    let n = cols.len();
    let mut m: Vec<Vec<Rational>> = (0..rows)
        .map(|r| {
            let mut row: Vec<Rational> = cols.iter().map(|c| c[r].clone()).collect();
            row.push(target[r].clone());
            row
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                let pivot = m[r].clone();
                for (x, p) in m[i].iter_mut().zip(&pivot) {
                    *x -= p * &f;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    if m[r..].iter().any(|row| !row[n].is_zero()) {
        return None;
    }
    let mut sol = vec![Rational::zero(); n];
    for (i, &c) in pivots.iter().enumerate() {
        sol[c] = m[i][n].clone();
    }
    Some(sol)
}

impl PartialEq for TowerElement {
    fn eq(&self, o: &Self) -> bool {
        if common_tower(&self.tower, &o.tower).is_ok() {
            return self.lo == o.lo && self.hi == o.hi;
        }
        let (a, b) = (self.simplify(), o.simplify());
        if common_tower(&a.tower, &b.tower).is_ok() {
            return a.lo == b.lo && a.hi == b.hi;
        }
        // distinct roots of one minimal polynomial are far apart at these sizes
        a.minimal_polynomial() == b.minimal_polynomial()
            && (a.embed_complex() - b.embed_complex()).norm()
                <= 1e-9 * (1.0 + a.embed_complex().norm())
    }
}

impl fmt::Debug for TowerElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} in {:?}", self.tower)
    }
}

impl fmt::Display for TowerElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = &self.tower;
        let s = format!("√{}", d.d1);
        let t = if d.d2[1].is_zero() && d.d2[0].is_one() {
            "i".to_string()
        } else if d.d2[1].is_zero() {
            format!("i√{}", d.d2[0])
        } else {
            format!("i√({} + {}·{})", d.d2[0], d.d2[1], s)
        };
        let terms = [
            (&self.lo.a, String::new()),
            (&self.lo.b, s.clone()),
            (&self.hi.a, t.clone()),
            (&self.hi.b, format!("{s}·{t}")),
        ];
        let mut out = String::new();
        for (c, g) in terms.iter() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let m = c.abs();
            let body = if g.is_empty() {
                m.to_string()
            } else if m.is_one() {
                g.clone()
            } else {
                format!("{m}·{g}")
            };
            match (out.is_empty(), neg) {
                (true, false) => out.push_str(&body),
                (true, true) => out.push_str(&format!("-{body}")),
                (false, false) => out.push_str(&format!(" + {body}")),
                (false, true) => out.push_str(&format!(" - {body}")),
            }
        }
        if out.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{out}")
        }
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident, $checked:ident) => {
        impl $tr<&TowerElement> for &TowerElement {
            type Output = TowerElement;
            fn $m(self, o: &TowerElement) -> TowerElement {
                self.$checked(o).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $tr<TowerElement> for TowerElement {
            type Output = TowerElement;
            fn $m(self, o: TowerElement) -> TowerElement {
                (&self).$m(&o)
            }
        }
        impl $tr<&TowerElement> for TowerElement {
            type Output = TowerElement;
            fn $m(self, o: &TowerElement) -> TowerElement {
                (&self).$m(o)
            }
        }
        impl $tr<TowerElement> for &TowerElement {
            type Output = TowerElement;
            fn $m(self, o: TowerElement) -> TowerElement {
                self.$m(&o)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);
forward_binop!(Div, div, checked_div);

impl Neg for &TowerElement {
    type Output = TowerElement;
    fn neg(self) -> TowerElement {
        TowerElement::from_parts(self.tower.clone(), self.lo.neg(), self.hi.neg())
    }
}

impl Neg for TowerElement {
    type Output = TowerElement;
    fn neg(self) -> TowerElement {
        -&self
    }
}

impl Zero for TowerElement {
    fn zero() -> Self {
        TowerElement::zero()
    }
    fn is_zero(&self) -> bool {
        TowerElement::is_zero(self)
    }
}

impl One for TowerElement {
    fn one() -> Self {
        TowerElement::one()
    }
}

impl From<i64> for TowerElement {
    fn from(n: i64) -> Self {
        TowerElement::from_i64(n)
    }
}

impl From<Rational> for TowerElement {
    fn from(q: Rational) -> Self {
        TowerElement::rational(q)
    }
}

#[derive(serde::Serialize, serde::Deserialize)]
struct ElementRepr {
    d1: String,
    d2: [String; 2],
    coords: [String; 4],
}

impl serde::Serialize for TowerElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let d = &self.tower;
        ElementRepr {
            d1: format_rational(&d.d1),
            d2: [format_rational(&d.d2[0]), format_rational(&d.d2[1])],
            coords: self.coords().map(|c| format_rational(&c)),
        }
        .serialize(s)
    }
}

impl<'de> serde::Deserialize<'de> for TowerElement {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let r = ElementRepr::deserialize(d)?;
        let p = |s: &str| parse_rational(s).map_err(D::Error::custom);
        let d1 = p(&r.d1)?;
        let d2 = [p(&r.d2[0])?, p(&r.d2[1])?];
        let tower = TowerDescriptor::general(d1.clone(), d2.clone());
        if tower.d1 != d1 || tower.d2 != d2 {
            return Err(D::Error::custom("tower radicands are not in normal form"));
        }
        let coords = [p(&r.coords[0])?, p(&r.coords[1])?, p(&r.coords[2])?, p(&r.coords[3])?];
        TowerElement::from_coords(&tower, coords).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::{int, rat};

    fn z() -> Rational {
        Rational::zero()
    }

    #[test]
    fn normalization_extracts_squares() {
        let t = TowerDescriptor::new(int(12), [z(), z()]).unwrap();
        assert_eq!(t.d1(), &int(3));
        let s = t.sqrt_d1();
        assert_eq!(&s * &s, TowerElement::from_i64(12));
        let t = TowerDescriptor::new(int(16), [int(15), z()]).unwrap();
        assert!(!t.has_base());
        assert_eq!(t.sqrt_d1(), TowerElement::from_i64(4));
        let t = TowerDescriptor::new(z(), [rat(15, 16), z()]).unwrap();
        assert_eq!(t.d2(), &[int(15), z()]);
        let i = t.i_sqrt_d2();
        assert_eq!(&i * &i, TowerElement::rational(rat(-15, 16)));
    }

    #[test]
    fn negative_radicand_rejected() {
        assert!(matches!(
            TowerDescriptor::new(int(5), [int(-3), z()]),
            Err(Error::NegativeRadicand(_))
        ));
        assert!(matches!(
            TowerDescriptor::new(int(-2), [int(1), z()]),
            Err(Error::NegativeRadicand(_))
        ));
        // 2 - √5 < 0
        assert!(TowerDescriptor::new(int(5), [int(2), int(-1)]).is_err());
        assert!(TowerDescriptor::new(int(5), [int(3), int(-1)]).is_ok());
    }

    #[test]
    fn degenerate_extension_collapses() {
        // i√(-2) = -√2 already lies in Q(√2)
        let t = TowerDescriptor::general(int(2), [int(-2), z()]);
        assert!(!t.has_ext());
        let g = t.i_sqrt_d2();
        assert!((g.embed_complex() - Complex64::new(-2f64.sqrt(), 0.0)).norm() < 1e-15);
    }

    #[test]
    fn conjugation_rules() {
        let t = TowerDescriptor::new(int(3), [int(1), z()]).unwrap();
        let x = t.element_raw([z(), rat(-1, 2), rat(-1, 2), z()]);
        let c = x.conj().unwrap();
        assert!((c.embed_complex() - x.embed_complex().conj()).norm() < 1e-15);
        assert!(x.is_unimodular());

        // real quartic: conjugation is the identity
        let r = TowerDescriptor::general(int(5), [int(-2), int(-1)]);
        let y = r.element_raw([int(1), int(1), int(1), int(1)]);
        assert!(y.is_real());
        assert!(y.embed_complex().im.abs() < 1e-12);
    }

    #[test]
    fn imaginary_base_without_closed_conjugation() {
        // Q(√-47)(√((-33 + √-47)/8 ...)) style field, as arising from complex z
        let t = TowerDescriptor::general(int(-47), [int(3), int(1)]);
        assert!(t.has_ext());
        let u = t.element_raw([int(1), z(), int(1), z()]);
        assert!(!u.is_unimodular());
        let w = &u * &u.checked_inv().unwrap();
        assert!(w.is_one());
        // base elements of norm one are still unimodular: (1 + 4√-3... ) use a
        // Gaussian-like unit in Q(√-1)
        let g = TowerDescriptor::general(int(-1), [int(2), int(1)]);
        let i = g.sqrt_d1();
        assert!(i.is_unimodular());
    }

    #[test]
    fn minimal_polynomials() {
        let t = TowerDescriptor::new(int(3), [int(1), z()]).unwrap();
        // (√3 + i)/2 is a primitive 12th root of unity: x^4 - x^2 + 1
        let x = t.element_raw([z(), rat(1, 2), rat(1, 2), z()]);
        assert_eq!(x.minimal_polynomial(), vec![int(1), z(), int(-1), z(), int(1)]);
        let h = t.element_raw([rat(1, 2), z(), rat(1, 2), z()]);
        // (1 + i)/2: x^2 - x + 1/2
        assert_eq!(h.minimal_polynomial(), vec![rat(1, 2), int(-1), int(1)]);
    }

    #[test]
    fn equality_across_towers() {
        let a = TowerDescriptor::new(int(3), [int(1), z()]).unwrap();
        let b = TowerDescriptor::new(z(), [int(3), z()]).unwrap();
        // i√3 written two ways
        let x = &a.sqrt_d1() * &a.i_sqrt_d2();
        let y = b.i_sqrt_d2();
        assert_eq!(x, y);
        assert_ne!(x, -y);
    }

    #[test]
    fn exact_real_signs() {
        let t = TowerDescriptor::general(int(5), [int(-3), int(-1)]);
        let e = t.i_sqrt_d2(); // -√(3 + √5)
        assert_eq!(e.real_sign().unwrap(), Ordering::Less);
        let f = &e + &TowerElement::from_i64(3); // 3 - 2.288
        assert_eq!(f.real_sign().unwrap(), Ordering::Greater);
        let im = TowerDescriptor::new(int(5), [int(1), z()]).unwrap().i_sqrt_d2();
        assert_eq!(im.real_sign(), Err(Error::NotReal));
    }

    #[test]
    fn mixed_towers_rejected() {
        let a = TowerDescriptor::real_quadratic(int(2)).unwrap().sqrt_d1();
        let b = TowerDescriptor::real_quadratic(int(3)).unwrap().sqrt_d1();
        assert!(matches!(a.checked_mul(&b), Err(Error::IncompatibleTower(..))));
        let c = TowerDescriptor::new(int(2), [int(1), z()]).unwrap();
        assert!(a.checked_mul(&c.i_sqrt_d2()).is_ok());
    }

    #[test]
    fn json_round_trip() {
        let t = TowerDescriptor::new(int(13), [int(13), int(2)]).unwrap();
        let x = t.element_raw([rat(1, 3), rat(-2, 7), int(5), rat(1, 2)]);
        let js = serde_json::to_string(&x).unwrap();
        let back: TowerElement = serde_json::from_str(&js).unwrap();
        assert_eq!(back, x);
        assert_eq!(back.tower().as_ref(), x.tower().as_ref());
    }
}
