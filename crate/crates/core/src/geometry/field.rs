//! Finite fields GF(p^e) with q <= 32, as lookup tables.

use super::GeometryError;

pub const MAX_FIELD_ORDER: usize = 32;

/// Elements are integers `0..q` whose base-p digits are the coefficients of
/// a polynomial in `x`, constant term in the lowest digit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteField {
    p: usize,
    e: usize,
    q: usize,
    modulus: Vec<usize>,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
}

fn prime_power(q: usize) -> Option<(usize, usize)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q % d == 0)?;
    let (mut rest, mut e) = (q, 0);
    while rest % p == 0 {
        rest /= p;
        e += 1;
    }
    (rest == 1).then_some((p, e))
}

fn digits(mut a: usize, p: usize, e: usize) -> Vec<usize> {
    (0..e)
        .map(|_| {
            let d = a % p;
            a /= p;
            d
        })
        .collect()
}

fn undigits(d: &[usize], p: usize) -> usize {
    d.iter().rev().fold(0, |acc, &c| acc * p + c)
}

/// Product of `a` and `b` reduced by the monic `modulus` (low degree first).
fn poly_mul(a: &[usize], b: &[usize], modulus: &[usize], p: usize) -> Vec<usize> {
    let e = modulus.len() - 1;
    let mut prod = vec![0; 2 * e];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    for t in (e..prod.len()).rev() {
        let c = prod[t];
        if c != 0 {
            for (s, &m) in modulus.iter().enumerate().take(e) {
                let idx = t - e + s;
                prod[idx] = (prod[idx] + (p - c) * m) % p;
            }
            prod[t] = 0;
        }
    }
    prod.truncate(e);
    prod
}

fn mul_table(p: usize, e: usize, modulus: &[usize]) -> Vec<u8> {
    let q = p.pow(e as u32);
    let ds: Vec<Vec<usize>> = (0..q).map(|a| digits(a, p, e)).collect();
    let mut t = vec![0u8; q * q];
    for a in 0..q {
        for b in a..q {
            let c = undigits(&poly_mul(&ds[a], &ds[b], modulus, p), p) as u8;
            t[a * q + b] = c;
            t[b * q + a] = c;
        }
    }
    t
}

/// Lexicographically least monic irreducible of degree `e`, coefficients
/// compared constant term first.
fn least_irreducible(p: usize, e: usize) -> Vec<usize> {
    let q = p.pow(e as u32);
    // odometer over (c0, c1, ...) with c0 most significant
    let mut coeffs = vec![0usize; e];
    loop {
        let mut m = coeffs.clone();
        m.push(1);
        let t = mul_table(p, e, &m);
        let no_zero_divisors = (1..q).all(|a| (1..q).all(|b| t[a * q + b] != 0));
        if no_zero_divisors {
            return m;
        }
        let mut i = e;
        loop {
            i -= 1;
            coeffs[i] += 1;
            if coeffs[i] < p {
                break;
            }
            coeffs[i] = 0;
            assert!(i > 0, "an irreducible polynomial of every degree exists");
        }
    }
}

impl FiniteField {
    pub fn new(q: usize) -> Result<Self, GeometryError> {
        if q > MAX_FIELD_ORDER {
            return Err(GeometryError::FieldTooLarge(q));
        }
        let (p, e) = prime_power(q).ok_or(GeometryError::NotPrimePower(q))?;
        let modulus = if e == 1 { vec![0, 1] } else { least_irreducible(p, e) };
        let mul = mul_table(p, e, &modulus);
        let mut add = vec![0u8; q * q];
        for a in 0..q {
            let da = digits(a, p, e);
            for b in 0..q {
                let s: Vec<usize> = da.iter().zip(digits(b, p, e)).map(|(x, y)| (x + y) % p).collect();
                add[a * q + b] = undigits(&s, p) as u8;
            }
        }
        let neg = (0..q).map(|a| (0..q).find(|&b| add[a * q + b] == 0).unwrap() as u8).collect();
        let inv = (0..q)
            .map(|a| if a == 0 { 0 } else { (1..q).find(|&b| mul[a * q + b] == 1).unwrap() as u8 })
            .collect();
        Ok(FiniteField { p, e, q, modulus, add, mul, neg, inv })
    }

    pub fn order(&self) -> usize {
        self.q
    }

    pub fn characteristic(&self) -> usize {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.e
    }

    /// Monic modulus, constant term first; `[0, 1]` (that is, `x`) for prime fields.
    pub fn modulus(&self) -> &[usize] {
        &self.modulus
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.q + b] as usize
    }

    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.q + b] as usize
    }

    pub fn neg(&self, a: usize) -> usize {
        self.neg[a] as usize
    }

    pub fn inv(&self, a: usize) -> Option<usize> {
        (a != 0).then(|| self.inv[a] as usize)
    }
}

pub fn gf(q: usize) -> Result<FiniteField, GeometryError> {
    FiniteField::new(q)
}
