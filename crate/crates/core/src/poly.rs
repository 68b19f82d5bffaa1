//! Dense univariate polynomials over the rationals.
//!
//! `RatPoly` stores coefficients in ascending degree order. The vector is
//! empty for the zero polynomial and otherwise ends in a nonzero coefficient.
//! Real-root counting uses a Sturm chain built from integer pseudo-remainders
//! whose contents are stripped at every step.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rat::{self, Rat};

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct RatPoly {
    coeffs: Vec<Rat>,
}

impl RatPoly {
    pub fn new(coeffs: Vec<Rat>) -> Self {
        let mut p = RatPoly { coeffs };
        p.normalize();
        p
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn zero() -> Self {
        RatPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        Self::new(vec![c])
    }

    pub fn x() -> Self {
        Self::monomial(Rat::one(), 1)
    }

    /// `c * x^deg`.
    pub fn monomial(c: Rat, deg: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![Rat::zero(); deg + 1];
        coeffs[deg] = c;
        RatPoly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| rat::int(c)).collect())
    }

    /// Monic product of `(x - r)` over the given roots.
    pub fn from_roots(roots: &[Rat]) -> Self {
        roots.iter().fold(Self::one(), |acc, r| {
            &acc * &Self::new(vec![-r.clone(), Rat::one()])
        })
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Rat> {
        self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rat {
        self.coeffs.get(i).cloned().unwrap_or_else(Rat::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rat> {
        self.coeffs.last()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// True for constants, including zero.
    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        RatPoly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// The `order`-th derivative.
    pub fn derivative(&self, order: usize) -> Self {
        if order == 0 {
            return self.clone();
        }
        if order >= self.coeffs.len() {
            return Self::zero();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(order)
            .map(|(i, c)| {
                // i!/(i-order)! = i (i-1) ... (i-order+1)
                let falling: BigInt = ((i - order + 1)..=i).map(BigInt::from).product();
                c * Rat::from_integer(falling)
            })
            .collect();
        Self::new(coeffs)
    }

    /// Horner evaluation.
    pub fn eval(&self, x0: &Rat) -> Rat {
        self.coeffs
            .iter()
            .rev()
            .fold(Rat::zero(), |acc, c| acc * x0 + c)
    }

    /// `p(c x)`.
    pub fn scale_arg(&self, c: &Rat) -> Self {
        let mut factor = Rat::one();
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            coeffs.push(a * &factor);
            factor *= c;
        }
        Self::new(coeffs)
    }

    /// `p(-x)`.
    pub fn reflect(&self) -> Self {
        self.scale_arg(&-Rat::one())
    }

    /// `p(x + c)` by repeated synthetic division.
    pub fn shift(&self, c: &Rat) -> Self {
        let mut a = self.coeffs.clone();
        let n = a.len();
        for i in 0..n {
            for j in (i..n.saturating_sub(1)).rev() {
                let t = &a[j + 1] * c;
                a[j] += t;
            }
        }
        Self::new(a)
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some(lc) => self.scale(&lc.recip()),
        }
    }

    /// Euclidean division over the rationals.
    pub fn div_rem(&self, divisor: &RatPoly) -> Result<(RatPoly, RatPoly)> {
        let dd = divisor.degree().ok_or(Error::ZeroPolynomial)?;
        let lc_inv = divisor.coeffs[dd].recip();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Self::zero(), self.clone()));
        }
        let mut quot = vec![Rat::zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let q = &rem[i + dd] * &lc_inv;
            if !q.is_zero() {
                for (j, d) in divisor.coeffs.iter().enumerate() {
                    rem[i + j] -= &q * d;
                }
            }
            quot[i] = q;
        }
        rem.truncate(dd);
        Ok((Self::new(quot), Self::new(rem)))
    }

    /// Lagrange interpolant through points with distinct abscissae.
    pub fn interpolate(points: &[(Rat, Rat)]) -> Result<RatPoly> {
        let mut out = RatPoly::zero();
        for (i, (xi, yi)) in points.iter().enumerate() {
            let mut basis = RatPoly::one();
            let mut denom = Rat::one();
            for (j, (xj, _)) in points.iter().enumerate() {
                if i == j {
                    continue;
                }
                if xi == xj {
                    return Err(Error::InvalidParameter(format!("repeated abscissa {xi}")));
                }
                basis = &basis * &RatPoly::new(vec![-xj.clone(), Rat::one()]);
                denom *= xi - xj;
            }
            out = &out + &basis.scale(&(yi / denom));
        }
        Ok(out)
    }

    /// `C(x, k) = x (x-1) ... (x-k+1) / k!` as a polynomial in `x`.
    pub fn binomial_poly(k: usize) -> RatPoly {
        let falling = (0..k).fold(RatPoly::one(), |acc, i| {
            &acc * &RatPoly::new(vec![-rat::from_usize(i), Rat::one()])
        });
        falling.scale(&Rat::new(BigInt::one(), rat::factorial(k)))
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &RatPoly) -> RatPoly {
        if self.is_zero() {
            return other.monic();
        }
        if other.is_zero() {
            return self.monic();
        }
        let (mut a, mut b) = (primitive_int(self), primitive_int(other));
        if a.len() < b.len() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_empty() {
            let (r, _) = pseudo_rem(&a, &b);
            a = b;
            b = strip_content(r);
        }
        int_to_rat(&a).monic()
    }

    /// `p / gcd(p, p')`, monic.
    pub fn squarefree_part(&self) -> Result<RatPoly> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let g = self.gcd(&self.derivative(1));
        let (q, _) = self.div_rem(&g)?;
        Ok(q.monic())
    }

    /// Number of distinct real roots, from the Sturm chain evaluated at ±∞.
    pub fn count_real_roots(&self) -> Result<usize> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if self.is_constant() {
            return Ok(0);
        }
        let chain = sturm_chain(self);
        let at_pos: Vec<i8> = chain.iter().map(|p| sign(p.last().unwrap())).collect();
        let at_neg: Vec<i8> = chain
            .iter()
            .map(|p| {
                let s = sign(p.last().unwrap());
                if (p.len() - 1) % 2 == 0 {
                    s
                } else {
                    -s
                }
            })
            .collect();
        Ok(sign_changes(&at_neg) - sign_changes(&at_pos))
    }

    /// True when every complex root is real. Zero and nonzero constants
    /// count as real-rooted.
    pub fn is_real_rooted(&self) -> bool {
        if self.is_constant() {
            return true;
        }
        let sf = self.squarefree_part().expect("nonzero");
        let d = sf.degree().unwrap_or(0);
        sf.count_real_roots().expect("nonzero") == d
    }

    /// Sturm chain of `self` as primitive integer polynomials, for inspection.
    pub fn sturm_sequence(&self) -> Vec<RatPoly> {
        if self.is_zero() {
            return Vec::new();
        }
        sturm_chain(self).iter().map(|p| int_to_rat(p)).collect()
    }
}

fn sign(x: &BigInt) -> i8 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

fn sign_changes(signs: &[i8]) -> usize {
    let nonzero: Vec<i8> = signs.iter().copied().filter(|&s| s != 0).collect();
    nonzero.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Clears denominators and divides out the positive content, preserving sign.
fn primitive_int(p: &RatPoly) -> Vec<BigInt> {
    let lcm = p
        .coeffs
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints = p
        .coeffs
        .iter()
        .map(|c| (c * Rat::from_integer(lcm.clone())).to_integer())
        .collect();
    strip_content(ints)
}

fn strip_content(mut v: Vec<BigInt>) -> Vec<BigInt> {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
    let g = v.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if !g.is_zero() && !g.is_one() {
        for c in v.iter_mut() {
            *c /= &g;
        }
    }
    v
}

fn int_to_rat(v: &[BigInt]) -> RatPoly {
    RatPoly::new(v.iter().cloned().map(Rat::from_integer).collect())
}

/// Pseudo-remainder of `a` by `b`: returns `(r, s)` with `lc(b)^s * a ≡ r (mod b)`.
fn pseudo_rem(a: &[BigInt], b: &[BigInt]) -> (Vec<BigInt>, usize) {
    let lb = b.last().expect("nonzero divisor");
    let mut r = a.to_vec();
    let mut steps = 0;
    while !r.is_empty() && r.len() >= b.len() {
        let lr = r.last().unwrap().clone();
        let shift = r.len() - b.len();
        for c in r.iter_mut() {
            *c *= lb;
        }
        for (j, bj) in b.iter().enumerate() {
            r[shift + j] -= &lr * bj;
        }
        while r.last().is_some_and(Zero::is_zero) {
            r.pop();
        }
        steps += 1;
    }
    (r, steps)
}

fn sturm_chain(p: &RatPoly) -> Vec<Vec<BigInt>> {
    let mut chain = vec![primitive_int(p), primitive_int(&p.derivative(1))];
    loop {
        let n = chain.len();
        let (r, steps) = pseudo_rem(&chain[n - 2], &chain[n - 1]);
        if r.is_empty() {
            break;
        }
        // lc^steps * rem = r; the next element is -rem up to a positive factor.
        let lb_negative = chain[n - 1].last().unwrap().is_negative();
        let flip = !(lb_negative && steps % 2 == 1);
        let next: Vec<BigInt> = if flip { r.into_iter().map(|c| -c).collect() } else { r };
        chain.push(strip_content(next));
    }
    chain
}

impl Add for &RatPoly {
    type Output = RatPoly;
    fn add(self, rhs: &RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        RatPoly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &RatPoly {
    type Output = RatPoly;
    fn sub(self, rhs: &RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        RatPoly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Neg for &RatPoly {
    type Output = RatPoly;
    fn neg(self) -> RatPoly {
        RatPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &RatPoly {
    type Output = RatPoly;
    fn mul(self, rhs: &RatPoly) -> RatPoly {
        if self.is_zero() || rhs.is_zero() {
            return RatPoly::zero();
        }
        let mut out = vec![Rat::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RatPoly::new(out)
    }
}

macro_rules! forward_owned {
    ($($tr:ident $method:ident),*) => {$(
        impl $tr for RatPoly {
            type Output = RatPoly;
            fn $method(self, rhs: RatPoly) -> RatPoly {
                (&self).$method(&rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for RatPoly {
    type Output = RatPoly;
    fn neg(self) -> RatPoly {
        -&self
    }
}

impl fmt::Display for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let (neg, mag) = (c.is_negative(), c.abs());
            match (first, neg) {
                (true, true) => write!(f, "-")?,
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
                (true, false) => {}
            }
            first = false;
            let show_coeff = i == 0 || !mag.is_one();
            if show_coeff {
                if mag.is_integer() {
                    write!(f, "{}", mag.numer())?;
                } else {
                    write!(f, "({mag})")?;
                }
            }
            match i {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct PolyJson {
    #[serde(with = "crate::rat::serde_rat_vec")]
    coeffs: Vec<Rat>,
}

impl Serialize for RatPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PolyJson {
            coeffs: self.coeffs.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for RatPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        PolyJson::deserialize(d).map(|p| RatPoly::new(p.coeffs))
    }
}
