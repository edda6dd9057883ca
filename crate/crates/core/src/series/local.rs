use std::collections::BTreeMap;

use num_integer::Integer;

use crate::arith::{divisors, euler_phi, factorize, TruncPoly};
use crate::error::{Error, Result};
use crate::fields::local_factor_from_characters;

/// Euler factor at a prime `p` not dividing `n`:
/// `sum_{d | n, d | p - 1} phi(d) u^{n (1 - 1/d)}`.
///
/// Only `p mod n` matters, so any representative of the class may be passed.
pub fn tame_local_factor(n: u64, p: u64) -> Result<TruncPoly> {
    if n < 2 {
        return Err(Error::UnsupportedGroup {
            n,
            reason: "the group must be nontrivial".into(),
        });
    }
    if p.gcd(&n) != 1 {
        return Err(Error::WildPrime { n, p });
    }
    let deg = (n - 1) as usize;
    let mut coeffs = vec![0i64; deg + 1];
    for d in divisors(n) {
        if (p % n) % d == 1 % d {
            coeffs[(n - n / d) as usize] += euler_phi(d) as i64;
        }
    }
    Ok(TruncPoly::from_i64(&coeffs, deg))
}

/// Explicit Euler factors at primes dividing `n`, keyed by `(n, p)`.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct WildTable {
    entries: BTreeMap<(u64, u64), TruncPoly>,
}

impl WildTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, n: u64, p: u64, factor: TruncPoly) {
        self.entries.insert((n, p), factor);
    }

    pub fn get(&self, n: u64, p: u64) -> Option<&TruncPoly> {
        self.entries.get(&(n, p))
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(u64, u64), &TruncPoly)> {
        self.entries.iter()
    }

    /// The dyadic factor `1 + u^2 + 2u^6 + 4u^11` for `C_4` as it appears in
    /// the literature closed forms for the secondary constants.
    pub fn published_c4() -> Self {
        let mut t = Self::new();
        let mut c = vec![0i64; 12];
        c[0] = 1;
        c[2] = 1;
        c[6] = 2;
        c[11] = 4;
        t.insert(4, 2, TruncPoly::from_i64(&c, 11));
        t
    }

    /// Parses lines `n p c0 c1 c2 ...`; `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self> {
        let mut t = Self::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |reason: &str| Error::WildTableParse {
                line: i + 1,
                reason: reason.into(),
            };
            let fields: Vec<i64> = line
                .split_whitespace()
                .map(|w| w.parse::<i64>().map_err(|_| err("expected integers")))
                .collect::<Result<_>>()?;
            if fields.len() < 3 {
                return Err(err("need n, p and at least one coefficient"));
            }
            let (n, p) = (fields[0], fields[1]);
            if n < 2 || p < 2 || n % p != 0 {
                return Err(err("p must be a prime dividing n >= 2"));
            }
            if fields[2] != 1 {
                return Err(err("constant coefficient must be 1"));
            }
            let coeffs = &fields[2..];
            t.insert(
                n as u64,
                p as u64,
                TruncPoly::from_i64(coeffs, coeffs.len() - 1),
            );
        }
        Ok(t)
    }
}

/// Where the Euler factors at primes dividing `n` come from.
#[derive(Clone, Debug, Default, PartialEq)]
pub enum WildSource {
    /// Computed from the local characters of order dividing `n`.
    #[default]
    Derived,
    /// Looked up in a table, falling back to derivation if `fallback` is set.
    Table { table: WildTable, fallback: bool },
}

/// Euler factor at a prime `p | n`.
pub fn wild_local_factor(n: u64, p: u64, source: &WildSource) -> Result<TruncPoly> {
    if !n.is_multiple_of(p) || factorize(p).len() != 1 || factorize(p)[0].1 != 1 {
        return Err(Error::InvalidArgument(format!(
            "{p} is not a prime dividing {n}"
        )));
    }
    match source {
        WildSource::Derived => local_factor_from_characters(n, p),
        WildSource::Table { table, fallback } => match table.get(n, p) {
            Some(f) => Ok(f.clone()),
            None if *fallback => local_factor_from_characters(n, p),
            None => Err(Error::MissingWildFactor { n, p }),
        },
    }
}

/// All local factors of the discriminant series of `C_n`-etale algebras.
#[derive(Clone, Debug)]
pub struct LocalFactorSystem {
    pub n: u64,
    tame: BTreeMap<u64, TruncPoly>,
    wild: BTreeMap<u64, TruncPoly>,
}

impl LocalFactorSystem {
    pub fn new(n: u64, source: &WildSource) -> Result<Self> {
        let mut tame = BTreeMap::new();
        for r in 1..n {
            if r.gcd(&n) == 1 {
                tame.insert(r, tame_local_factor(n, r)?);
            }
        }
        let mut wild = BTreeMap::new();
        for (p, _) in factorize(n) {
            wild.insert(p, wild_local_factor(n, p, source)?);
        }
        Ok(LocalFactorSystem { n, tame, wild })
    }

    pub fn factor(&self, p: u64) -> &TruncPoly {
        match self.wild.get(&p) {
            Some(f) => f,
            None => &self.tame[&(p % self.n)],
        }
    }

    pub fn wild_factors(&self) -> &BTreeMap<u64, TruncPoly> {
        &self.wild
    }

    pub fn tame_factors(&self) -> &BTreeMap<u64, TruncPoly> {
        &self.tame
    }
}
