use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{invariant_factors, Integer, Matrix};

/// Coefficient ring for (co)homology.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Coefficients {
    Integers,
    /// `ℤ/p` for a prime `p`.
    Mod(u64),
    Rationals,
}

fn is_prime(p: u64) -> bool {
    p >= 2
        && (2..)
            .take_while(|d| d * d <= p)
            .all(|d| !p.is_multiple_of(d))
}

impl Coefficients {
    pub fn modulo(p: u64) -> Result<Self> {
        if is_prime(p) && p < 1 << 32 {
            Ok(Coefficients::Mod(p))
        } else {
            Err(Error::input(format!(
                "{p} is not a supported prime modulus"
            )))
        }
    }

    /// `Z`, `Q`, `Zp:<p>` or `Z/<p>`.
    pub fn parse(s: &str) -> Result<Self> {
        let t = s.trim();
        match t {
            "Z" | "z" => return Ok(Coefficients::Integers),
            "Q" | "q" => return Ok(Coefficients::Rationals),
            _ => {}
        }
        let digits = t
            .strip_prefix("Zp:")
            .or_else(|| t.strip_prefix("Z/"))
            .or_else(|| t.strip_prefix("zp:"))
            .ok_or_else(|| Error::input(format!("unknown coefficients `{t}`")))?;
        let p = digits
            .parse()
            .map_err(|_| Error::input(format!("bad modulus `{digits}`")))?;
        Self::modulo(p)
    }

    pub fn is_field(self) -> bool {
        !matches!(self, Coefficients::Integers)
    }
}

impl fmt::Display for Coefficients {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coefficients::Integers => write!(f, "Z"),
            Coefficients::Mod(p) => write!(f, "Z/{p}"),
            Coefficients::Rationals => write!(f, "Q"),
        }
    }
}

/// A finitely generated abelian group `ℤ^betti ⊕ ℤ/d₁ ⊕ … ⊕ ℤ/dₖ` with
/// `1 < d₁ | d₂ | … | dₖ`. Over a field, `betti` is the dimension and the
/// torsion list is empty.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct HomologyGroup {
    pub betti: usize,
    pub torsion: Vec<Integer>,
}

impl HomologyGroup {
    pub fn zero() -> Self {
        HomologyGroup {
            betti: 0,
            torsion: vec![],
        }
    }

    pub fn free(rank: usize) -> Self {
        HomologyGroup {
            betti: rank,
            torsion: vec![],
        }
    }

    /// Canonical form of `ℤ^betti ⊕ ⊕ ℤ/oᵢ`; orders `0` count as free
    /// summands and orders `±1` vanish.
    pub fn from_cyclic(betti: usize, orders: impl IntoIterator<Item = Integer>) -> Self {
        let mut betti = betti;
        let mut finite = Vec::new();
        for o in orders {
            if o.is_zero() {
                betti += 1;
            } else if !o.is_unit() {
                finite.push(o.abs());
            }
        }
        let k = finite.len();
        let diag = Matrix::from_fn(k, k, |i, j| {
            if i == j {
                finite[i].clone()
            } else {
                Integer::ZERO
            }
        });
        let torsion = invariant_factors(&diag)
            .into_iter()
            .filter(|d| !d.is_one())
            .collect();
        HomologyGroup { betti, torsion }
    }

    pub fn is_zero(&self) -> bool {
        self.betti == 0 && self.torsion.is_empty()
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        Self::from_cyclic(
            self.betti + other.betti,
            self.torsion.iter().chain(&other.torsion).cloned(),
        )
    }

    /// `G ⊗ H`.
    pub fn tensor(&self, other: &Self) -> Self {
        let mut orders = Vec::new();
        for _ in 0..other.betti {
            orders.extend(self.torsion.iter().cloned());
        }
        for _ in 0..self.betti {
            orders.extend(other.torsion.iter().cloned());
        }
        for a in &self.torsion {
            for b in &other.torsion {
                orders.push(a.gcd(b));
            }
        }
        Self::from_cyclic(self.betti * other.betti, orders)
    }

    /// `Tor(G, H)`.
    pub fn tor(&self, other: &Self) -> Self {
        let orders = self
            .torsion
            .iter()
            .flat_map(|a| other.torsion.iter().map(move |b| a.gcd(b)));
        Self::from_cyclic(0, orders)
    }

    /// Number of torsion summands whose order is divisible by `p`.
    pub fn p_rank(&self, p: u64) -> usize {
        let p = Integer::from(p as i64);
        self.torsion.iter().filter(|d| p.divides(d)).count()
    }

    /// The torsion subgroup.
    pub fn torsion_part(&self) -> Self {
        HomologyGroup {
            betti: 0,
            torsion: self.torsion.clone(),
        }
    }
}

impl fmt::Display for HomologyGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.betti {
            0 => {}
            1 => parts.push("Z".to_string()),
            b => parts.push(format!("Z^{b}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        write!(f, "{}", parts.join(" + "))
    }
}
