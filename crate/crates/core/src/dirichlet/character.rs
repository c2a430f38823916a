//! Dirichlet characters built from the cyclic decomposition of `(Z/PZ)*`.
//!
//! Values are stored exactly as exponents `k` of `e^{2πik/L}`, `L` the group
//! exponent, so multiplicativity and conjugation are integer identities and
//! the complex table is derived once.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

/// Sign in the exponent of the Gauss sum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GaussConvention {
    /// `Σ χ(n) e^{−2πin/P}`
    #[default]
    Paper,
    /// `Σ χ(n) e^{+2πin/P}`
    Standard,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DirichletCharacter {
    pub modulus: u64,
    /// Mixed-radix index of the exponent tuple; 0 is the principal character.
    pub label: usize,
    /// Exponent tuple on the cyclic factors.
    pub exponents: Vec<u64>,
    /// Group exponent `L`; values are `L`-th roots of unity.
    pub order_bound: u64,
    /// `χ(n) = e^{2πi k/L}` with `k = indices[n mod P]`, `None` off the unit group.
    pub indices: Vec<Option<u64>>,
    pub values: Vec<Complex64>,
    pub parity: Parity,
    pub conductor: u64,
    pub primitive: bool,
}

impl DirichletCharacter {
    /// `χ(n)` for any integer `n`.
    pub fn value(&self, n: i64) -> Complex64 {
        self.values[n.rem_euclid(self.modulus as i64) as usize]
    }

    /// Root-of-unity exponent of `χ(n)`, `None` when `gcd(n, P) > 1`.
    pub fn index(&self, n: i64) -> Option<u64> {
        self.indices[n.rem_euclid(self.modulus as i64) as usize]
    }

    pub fn is_principal(&self) -> bool {
        self.indices.iter().flatten().all(|&k| k == 0)
    }

    /// Multiplicative order of the character.
    pub fn order(&self) -> u64 {
        self.indices
            .iter()
            .flatten()
            .fold(1, |acc, &k| lcm(acc, self.order_bound / gcd(k, self.order_bound)))
    }

    /// The complex conjugate character, exact on the index table.
    pub fn conj(&self) -> DirichletCharacter {
        let l = self.order_bound;
        let indices: Vec<Option<u64>> = self.indices.iter().map(|k| k.map(|k| (l - k) % l)).collect();
        let group = UnitGroup::new(self.modulus);
        let exponents: Vec<u64> = self
            .exponents
            .iter()
            .zip(&group.factors)
            .map(|(&c, f)| (f.order - c) % f.order)
            .collect();
        let label = group.label_of(&exponents);
        DirichletCharacter {
            modulus: self.modulus,
            label,
            exponents,
            order_bound: l,
            values: values_from_indices(&indices, l),
            indices,
            parity: self.parity,
            conductor: self.conductor,
            primitive: self.primitive,
        }
    }

    pub fn gauss_sum(&self, convention: GaussConvention) -> Complex64 {
        let p = self.modulus as f64;
        let sign = match convention {
            GaussConvention::Paper => -1.0,
            GaussConvention::Standard => 1.0,
        };
        (1..=self.modulus)
            .map(|n| {
                let theta = sign * 2.0 * PI * (n % self.modulus) as f64 / p;
                self.value(n as i64) * Complex64::new(theta.cos(), theta.sin())
            })
            .sum()
    }

    /// `0` for even characters, `1` for odd ones.
    pub fn parity_shift(&self) -> u32 {
        match self.parity {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }
}

/// `Σ_{n=1}^{P} χ(n) e^{−2πin/P}`, the negative-exponent Gauss sum.
pub fn gauss_sum(chi: &DirichletCharacter) -> Complex64 {
    chi.gauss_sum(GaussConvention::Paper)
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        exp >>= 1;
    }
    acc
}

fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// One cyclic factor: `generator` has multiplicative `order` modulo `prime_power`.
#[derive(Debug, Clone)]
struct CyclicFactor {
    prime_power: u64,
    order: u64,
    /// Discrete log on this factor, indexed by residue mod `prime_power`.
    log: Vec<Option<u64>>,
}

impl CyclicFactor {
    fn new(prime_power: u64, generator: u64, order: u64) -> Self {
        let mut log = vec![None; prime_power as usize];
        let mut x = 1 % prime_power;
        for k in 0..order {
            log[x as usize] = Some(k);
            x = x * generator % prime_power;
        }
        CyclicFactor {
            prime_power,
            order,
            log,
        }
    }
}

/// `(Z/PZ)*` as a product of cyclic factors.
#[derive(Debug, Clone)]
struct UnitGroup {
    modulus: u64,
    factors: Vec<CyclicFactor>,
    exponent: u64,
}

fn primitive_root(q: u64, phi: u64) -> u64 {
    let primes: Vec<u64> = factorize(phi).into_iter().map(|(p, _)| p).collect();
    (2..q)
        .find(|&g| gcd(g, q) == 1 && primes.iter().all(|&p| pow_mod(g, phi / p, q) != 1))
        .expect("odd prime powers have primitive roots")
}

impl UnitGroup {
    fn new(modulus: u64) -> Self {
        let mut factors = Vec::new();
        for (p, e) in factorize(modulus) {
            let q = p.pow(e);
            if p == 2 {
                match e {
                    1 => {}
                    2 => factors.push(CyclicFactor::new(4, 3, 2)),
                    _ => {
                        factors.push(CyclicFactor::new(q, q - 1, 2));
                        factors.push(CyclicFactor::new(q, 5, q / 4));
                    }
                }
            } else {
                let phi = q / p * (p - 1);
                factors.push(CyclicFactor::new(q, primitive_root(q, phi), phi));
            }
        }
        let exponent = factors.iter().fold(1, |acc, f| lcm(acc, f.order));
        UnitGroup {
            modulus,
            factors,
            exponent,
        }
    }

    fn size(&self) -> usize {
        self.factors.iter().map(|f| f.order as usize).product()
    }

    /// Exponent vector of a unit `n` on the factors.
    fn log(&self, n: u64) -> Vec<u64> {
        let mut out = Vec::with_capacity(self.factors.len());
        let mut i = 0;
        while i < self.factors.len() {
            let f = &self.factors[i];
            let r = n % f.prime_power;
            let two_factor_pair = i + 1 < self.factors.len()
                && self.factors[i + 1].prime_power == f.prime_power;
            if two_factor_pair {
                // 2^e with e >= 3: r = (−1)^a 5^b.
                let g = &self.factors[i + 1];
                let (a, b) = match g.log[r as usize] {
                    Some(b) => (0, b),
                    None => (
                        1,
                        g.log[(f.prime_power - r) as usize].expect("every odd residue is ±5^b"),
                    ),
                };
                out.push(a);
                out.push(b);
                i += 2;
            } else {
                out.push(f.log[r as usize].expect("unit residue has a discrete log"));
                i += 1;
            }
        }
        out
    }

    fn label_of(&self, exps: &[u64]) -> usize {
        exps.iter()
            .zip(&self.factors)
            .fold(0usize, |acc, (&c, f)| acc * f.order as usize + c as usize)
    }

    fn exponents_of(&self, mut label: usize) -> Vec<u64> {
        let mut out = vec![0; self.factors.len()];
        for (slot, f) in out.iter_mut().zip(&self.factors).rev() {
            *slot = (label % f.order as usize) as u64;
            label /= f.order as usize;
        }
        out
    }
}

/// `e^{2πik/L}` with the four axis points exact and the upper half obtained by conjugation.
fn root_of_unity(k: u64, l: u64) -> Complex64 {
    let k = k % l;
    if k == 0 {
        return Complex64::new(1.0, 0.0);
    }
    if 2 * k == l {
        return Complex64::new(-1.0, 0.0);
    }
    if 4 * k == l {
        return Complex64::new(0.0, 1.0);
    }
    if 4 * k == 3 * l {
        return Complex64::new(0.0, -1.0);
    }
    if 2 * k > l {
        return root_of_unity(l - k, l).conj();
    }
    let theta = 2.0 * PI * k as f64 / l as f64;
    Complex64::new(theta.cos(), theta.sin())
}

fn values_from_indices(indices: &[Option<u64>], l: u64) -> Vec<Complex64> {
    indices
        .iter()
        .map(|k| match k {
            Some(k) => root_of_unity(*k, l),
            None => Complex64::new(0.0, 0.0),
        })
        .collect()
}

fn build(group: &UnitGroup, label: usize) -> DirichletCharacter {
    let p = group.modulus;
    let l = group.exponent;
    let exponents = group.exponents_of(label);
    let indices: Vec<Option<u64>> = (0..p)
        .map(|n| {
            if gcd(n, p) != 1 {
                return None;
            }
            let logs = group.log(n);
            let k = logs
                .iter()
                .zip(&exponents)
                .zip(&group.factors)
                .fold(0u64, |acc, ((&a, &c), f)| (acc + a * c % f.order * (l / f.order)) % l);
            Some(k)
        })
        .collect();

    let minus_one = indices[((p + p - 1) % p) as usize].unwrap_or(0);
    let parity = if minus_one == 0 { Parity::Even } else { Parity::Odd };

    // Smallest d | P on which χ is trivial for every unit n ≡ 1 (mod d).
    let conductor = (1..=p)
        .filter(|d| p % d == 0)
        .find(|&d| {
            (0..p).all(|n| match indices[n as usize] {
                Some(k) => n % d != 1 % d || k == 0,
                None => true,
            })
        })
        .unwrap_or(p);

    DirichletCharacter {
        modulus: p,
        label,
        exponents,
        order_bound: l,
        values: values_from_indices(&indices, l),
        indices,
        parity,
        conductor,
        primitive: conductor == p,
    }
}

/// All `φ(P)` characters modulo `P`, ordered by label.
pub fn enumerate_characters(modulus: u64) -> Result<Vec<DirichletCharacter>> {
    if modulus == 0 {
        return Err(Error::domain("modulus must be at least 1"));
    }
    let group = UnitGroup::new(modulus);
    Ok((0..group.size()).map(|label| build(&group, label)).collect())
}

/// One character by label.
pub fn character(modulus: u64, label: usize) -> Result<DirichletCharacter> {
    if modulus == 0 {
        return Err(Error::domain("modulus must be at least 1"));
    }
    let group = UnitGroup::new(modulus);
    if label >= group.size() {
        return Err(Error::domain(format!(
            "label {label} out of range: there are {} characters mod {modulus}",
            group.size()
        )));
    }
    Ok(build(&group, label))
}

/// The primitive characters modulo `P`.
pub fn primitive_characters(modulus: u64) -> Result<Vec<DirichletCharacter>> {
    Ok(enumerate_characters(modulus)?
        .into_iter()
        .filter(|c| c.primitive)
        .collect())
}

/// Euler's totient.
pub fn totient(n: u64) -> u64 {
    factorize(n)
        .into_iter()
        .fold(n, |acc, (p, _)| acc / p * (p - 1))
}
