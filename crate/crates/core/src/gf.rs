//! Small finite fields GF(2), GF(3), GF(4) via precomputed tables.
//!
//! GF(4) is GF(2)[x]/(x² + x + 1) with elements encoded as `a + 2b` for the
//! residue `a + b·x`.

use std::fmt;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FieldElem(pub u8);

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct GaloisField {
    q: u8,
    add: Vec<Vec<u8>>,
    mul: Vec<Vec<u8>>,
    neg: Vec<u8>,
    inv: Vec<Option<u8>>,
}

impl fmt::Debug for GaloisField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.q)
    }
}

pub const SUPPORTED_ORDERS: [usize; 3] = [2, 3, 4];

impl GaloisField {
    pub fn new(q: usize) -> Result<Self> {
        let (add, mul): (Box<dyn Fn(u8, u8) -> u8>, Box<dyn Fn(u8, u8) -> u8>) = match q {
            2 | 3 => {
                let p = q as u8;
                (Box::new(move |a, b| (a + b) % p), Box::new(move |a, b| (a * b) % p))
            }
            4 => (Box::new(|a, b| a ^ b), Box::new(gf4_mul)),
            _ => {
                return Err(Error::InvalidParameter(format!(
                    "GF({q}) not supported; use one of {SUPPORTED_ORDERS:?}"
                )))
            }
        };
        let q8 = q as u8;
        let add_t: Vec<Vec<u8>> = (0..q8).map(|a| (0..q8).map(|b| add(a, b)).collect()).collect();
        let mul_t: Vec<Vec<u8>> = (0..q8).map(|a| (0..q8).map(|b| mul(a, b)).collect()).collect();
        let neg = (0..q8)
            .map(|a| (0..q8).find(|&b| add_t[a as usize][b as usize] == 0).unwrap())
            .collect();
        let inv = (0..q8)
            .map(|a| (0..q8).find(|&b| mul_t[a as usize][b as usize] == 1))
            .collect();
        Ok(GaloisField {
            q: q8,
            add: add_t,
            mul: mul_t,
            neg,
            inv,
        })
    }

    pub fn order(&self) -> usize {
        self.q as usize
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElem> {
        (0..self.q).map(FieldElem)
    }

    #[inline]
    pub fn add(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        FieldElem(self.add[a.0 as usize][b.0 as usize])
    }

    #[inline]
    pub fn mul(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        FieldElem(self.mul[a.0 as usize][b.0 as usize])
    }

    pub fn neg(&self, a: FieldElem) -> FieldElem {
        FieldElem(self.neg[a.0 as usize])
    }

    pub fn inv(&self, a: FieldElem) -> Option<FieldElem> {
        self.inv[a.0 as usize].map(FieldElem)
    }

    /// Standard pairing `Σ x_i y_i`.
    pub fn dot(&self, x: &[u8], y: &[u8]) -> u8 {
        x.iter()
            .zip(y)
            .fold(0, |acc, (&a, &b)| self.add[acc as usize][self.mul[a as usize][b as usize] as usize])
    }

    /// All vectors of `GF(q)^dim` in lexicographic order (first coordinate
    /// most significant).
    pub fn vectors(&self, dim: usize) -> Vec<Vec<u8>> {
        let count = (self.q as usize).pow(dim as u32);
        (0..count)
            .map(|mut idx| {
                let mut v = vec![0u8; dim];
                for slot in v.iter_mut().rev() {
                    *slot = (idx % self.q as usize) as u8;
                    idx /= self.q as usize;
                }
                v
            })
            .collect()
    }
}

fn gf4_mul(a: u8, b: u8) -> u8 {
    // carry-less product then reduce by x^2 = x + 1
    let mut p = 0u8;
    for i in 0..2 {
        if b >> i & 1 == 1 {
            p ^= a << i;
        }
    }
    if p & 0b100 != 0 {
        p ^= 0b111;
    }
    p
}
