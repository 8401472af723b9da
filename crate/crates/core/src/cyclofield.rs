//! Exact arithmetic in cyclotomic fields Q(ζ_N).

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::intlat::{Int, Rational};

type Poly = Vec<Rational>;

fn trim(p: &mut Poly) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn poly_mul(a: &[Rational], b: &[Rational]) -> Poly {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

fn poly_sub(a: &[Rational], b: &[Rational]) -> Poly {
    let mut out = vec![Rational::zero(); a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, x) in b.iter().enumerate() {
        out[i] -= x;
    }
    trim(&mut out);
    out
}

fn poly_divrem(a: &[Rational], b: &[Rational]) -> (Poly, Poly) {
    let mut r: Poly = a.to_vec();
    trim(&mut r);
    let db = b.len() - 1;
    let lead = b[db].clone();
    if r.len() < b.len() {
        return (vec![], r);
    }
    let mut q = vec![Rational::zero(); r.len() - db];
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let c = r.last().unwrap() / &lead;
        for (i, y) in b.iter().enumerate() {
            r[shift + i] -= &c * y;
        }
        q[shift] = c;
        trim(&mut r);
    }
    trim(&mut q);
    (q, r)
}

/// The N-th cyclotomic polynomial, by dividing `x^N - 1` by `Φ_d` for proper divisors d.
pub fn cyclotomic_polynomial(n: u32) -> Vec<Int> {
    let rat = cyclotomic_rational(n);
    rat.iter().map(|c| c.to_integer()).collect()
}

fn cyclotomic_rational(n: u32) -> Poly {
    let mut p = vec![Rational::zero(); n as usize + 1];
    p[0] = -Rational::one();
    p[n as usize] = Rational::one();
    for d in 1..n {
        if n.is_multiple_of(d) {
            let (q, _) = poly_divrem(&p, &cyclotomic_rational(d));
            p = q;
        }
    }
    p
}

/// An element of Q(ζ_N) in the power basis `1, ζ, …, ζ^{φ(N)-1}`.
#[derive(Clone, PartialEq, Eq)]
pub struct CycloElement {
    n: u32,
    coeffs: Vec<Rational>,
}

impl CycloElement {
    fn modulus(&self) -> Poly {
        cyclotomic_rational(self.n)
    }

    fn degree(n: u32) -> usize {
        cyclotomic_rational(n).len() - 1
    }

    fn reduced(n: u32, p: Poly) -> Self {
        let (_, mut r) = poly_divrem(&p, &cyclotomic_rational(n));
        r.resize(Self::degree(n), Rational::zero());
        CycloElement { n, coeffs: r }
    }

    pub fn from_coeffs(n: u32, coeffs: Vec<Rational>) -> Self {
        Self::reduced(n, coeffs)
    }

    /// Integer coefficients over a common denominator.
    pub fn from_ints(n: u32, coeffs: &[i64], den: i64) -> Result<Self> {
        if den == 0 {
            return Err(Error::DivisionByZero);
        }
        let c = coeffs.iter().map(|&x| Rational::new(Int::from(x), Int::from(den))).collect();
        Ok(Self::reduced(n, c))
    }

    pub fn zero(n: u32) -> Self {
        Self::reduced(n, vec![])
    }

    pub fn one(n: u32) -> Self {
        Self::reduced(n, vec![Rational::one()])
    }

    /// `ζ^k`.
    pub fn zeta_pow(n: u32, k: i64) -> Self {
        let e = k.rem_euclid(n as i64) as usize;
        let mut p = vec![Rational::zero(); e + 1];
        p[e] = Rational::one();
        Self::reduced(n, p)
    }

    pub fn order(&self) -> u32 {
        self.n
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    fn check(&self, other: &Self) {
        assert_eq!(self.n, other.n, "elements of different cyclotomic fields");
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        // extended Euclid: s·a + t·Φ = gcd (a unit since Φ is irreducible)
        let (mut r0, mut r1) = (self.modulus(), {
            let mut a = self.coeffs.clone();
            trim(&mut a);
            a
        });
        let (mut s0, mut s1): (Poly, Poly) = (vec![], vec![Rational::one()]);
        while !r1.is_empty() {
            let (q, r) = poly_divrem(&r0, &r1);
            let s2 = poly_sub(&s0, &poly_mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
        }
        if r0.len() != 1 {
            return Err(Error::Internal("cyclotomic modulus is not irreducible".into()));
        }
        let c = r0[0].clone();
        let s: Poly = s0.iter().map(|x| x / &c).collect();
        Ok(Self::reduced(self.n, s))
    }

    pub fn pow(&self, k: i64) -> Result<Self> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = Self::one(self.n);
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &b;
            }
            b = &b * &b;
            e >>= 1;
        }
        Ok(acc)
    }

    /// The automorphism `ζ ↦ ζ^k` (k coprime to N).
    pub fn galois(&self, k: i64) -> Self {
        let mut acc = Self::zero(self.n);
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let term = Self::zeta_pow(self.n, k * i as i64);
            acc = &acc + &term.scale(c);
        }
        acc
    }

    pub fn scale(&self, c: &Rational) -> Self {
        CycloElement { n: self.n, coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }
}

impl<'a> Add for &'a CycloElement {
    type Output = CycloElement;
    fn add(self, o: &'a CycloElement) -> CycloElement {
        self.check(o);
        CycloElement { n: self.n, coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a + b).collect() }
    }
}

impl<'a> Sub for &'a CycloElement {
    type Output = CycloElement;
    fn sub(self, o: &'a CycloElement) -> CycloElement {
        self.check(o);
        CycloElement { n: self.n, coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a - b).collect() }
    }
}

impl<'a> Mul for &'a CycloElement {
    type Output = CycloElement;
    fn mul(self, o: &'a CycloElement) -> CycloElement {
        self.check(o);
        CycloElement::reduced(self.n, poly_mul(&self.coeffs, &o.coeffs))
    }
}

impl Neg for &CycloElement {
    type Output = CycloElement;
    fn neg(self) -> CycloElement {
        CycloElement { n: self.n, coeffs: self.coeffs.iter().map(|a| -a).collect() }
    }
}

impl fmt::Debug for CycloElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for CycloElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => format!("{}", c),
                1 => format!("({})*z{}", c, self.n),
                _ => format!("({})*z{}^{}", c, self.n, i),
            })
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

/// Checks `value = ζ^torsion · Π generators[i]^exponents[i]` exactly.
pub fn verify_unit_decomposition(
    value: &CycloElement,
    torsion: i64,
    exponents: &[i64],
    generators: &[CycloElement],
) -> Result<bool> {
    if exponents.len() != generators.len() {
        return Err(Error::Dimension("one exponent per generator".into()));
    }
    let mut acc = CycloElement::zeta_pow(value.order(), torsion);
    for (g, &e) in generators.iter().zip(exponents) {
        acc = &acc * &g.pow(e)?;
    }
    Ok(&acc == value)
}
