//! Dense polynomials in `t` over a [`Coeff`] ring.

use std::fmt;

use super::field::Coeff;

/// Coefficients in ascending degree with no trailing zeros. `zero` carries
/// the coefficient context (such as the modulus) for the zero polynomial.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyOverField<K: Coeff> {
    coeffs: Vec<K>,
    zero: K,
}

impl<K: Coeff> PolyOverField<K> {
    pub fn new(mut coeffs: Vec<K>, like: &K) -> Self {
        while coeffs.last().is_some_and(Coeff::is_zero) {
            coeffs.pop();
        }
        PolyOverField {
            coeffs,
            zero: like.zero_like(),
        }
    }

    pub fn zero(like: &K) -> Self {
        Self::new(Vec::new(), like)
    }

    pub fn constant(c: K) -> Self {
        let like = c.clone();
        Self::new(vec![c], &like)
    }

    /// `c·t^k`.
    pub fn monomial(c: K, k: usize) -> Self {
        let mut coeffs = vec![c.zero_like(); k];
        let like = c.clone();
        coeffs.push(c);
        Self::new(coeffs, &like)
    }

    pub fn t(like: &K) -> Self {
        Self::monomial(like.one_like(), 1)
    }

    /// `t − c`.
    pub fn linear(c: &K) -> Self {
        Self::new(vec![c.neg(), c.one_like()], c)
    }

    /// Integer coefficients mapped into the ring of `like`.
    pub fn from_ints(coeffs: &[i64], like: &K) -> Self {
        Self::new(
            coeffs.iter().map(|&k| like.from_int_like(k)).collect(),
            like,
        )
    }

    pub fn coeffs(&self) -> &[K] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> K {
        self.coeffs
            .get(k)
            .cloned()
            .unwrap_or_else(|| self.zero.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn like(&self) -> &K {
        &self.zero
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::new(
            (0..n).map(|k| self.coeff(k).add(&o.coeff(k))).collect(),
            &self.zero,
        )
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        Self::new(self.coeffs.iter().map(Coeff::neg).collect(), &self.zero)
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero(&self.zero);
        }
        let mut out = vec![self.zero.clone(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        Self::new(out, &self.zero)
    }

    pub fn scale(&self, c: &K) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.mul(c)).collect(), &self.zero)
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::constant(self.zero.one_like());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// `p(t^k)`.
    pub fn substitute_power(&self, k: usize) -> Self {
        let mut out = vec![self.zero.clone(); self.degree().map_or(0, |d| d * k + 1)];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i * k] = c.clone();
        }
        Self::new(out, &self.zero)
    }

    pub fn eval(&self, t: &K) -> K {
        self.coeffs
            .iter()
            .rev()
            .fold(self.zero.clone(), |acc, c| acc.mul(t).add(c))
    }

    /// Exact quotient by a monic divisor, `None` when the remainder is nonzero.
    pub fn div_exact_monic(&self, d: &Self) -> Option<Self> {
        let dd = d.degree()?;
        if d.coeffs[dd] != self.zero.one_like() {
            return None;
        }
        let Some(da) = self.degree() else {
            return Some(self.clone());
        };
        if da < dd {
            return None;
        }
        let mut r = self.coeffs.clone();
        let mut q = vec![self.zero.clone(); da - dd + 1];
        for k in (0..=da - dd).rev() {
            let c = r[k + dd].clone();
            if c.is_zero() {
                continue;
            }
            for (j, b) in d.coeffs.iter().enumerate() {
                r[k + j] = r[k + j].sub(&c.mul(b));
            }
            q[k] = c;
        }
        r.iter()
            .all(Coeff::is_zero)
            .then(|| Self::new(q, &self.zero))
    }

    /// Multiplicity of the root `c`, `None` for the zero polynomial.
    pub fn order_at(&self, c: &K) -> Option<u32> {
        if self.is_zero() {
            return None;
        }
        let lin = Self::linear(c);
        let mut rest = self.clone();
        let mut k = 0;
        while let Some(q) = rest.div_exact_monic(&lin) {
            rest = q;
            k += 1;
        }
        Some(k)
    }
}

impl<K: Coeff> fmt::Display for PolyOverField<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| match k {
                0 => format!("({c})"),
                1 => format!("({c})*t"),
                _ => format!("({c})*t^{k}"),
            })
            .collect();
        f.write_str(&terms.join(" + "))
    }
}
