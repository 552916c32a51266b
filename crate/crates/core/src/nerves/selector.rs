use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::spaces::{standard_space, FiniteClosureSpace, PointSet, ProductKind, StandardKind};

/// The two-point interval objects with finite nerves.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Interval {
    /// `J₁`: two mutually adjacent points.
    J1,
    /// `J₊`: `1 ∈ c(0)` only.
    JPlus,
}

impl Interval {
    pub const ALL: [Interval; 2] = [Interval::J1, Interval::JPlus];

    /// Parses `j1` or `jplus`; the topological unit interval is refused
    /// because its nerves are not finite.
    pub fn parse(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "j1" | "j_1" => Ok(Interval::J1),
            "jplus" | "j+" | "j_plus" => Ok(Interval::JPlus),
            "i" | "interval" | "unit" => Err(Error::NonFinitary(
                "the unit interval has infinitely many singular simplices".into(),
            )),
            other => Err(Error::input(format!("unknown interval `{other}`"))),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Interval::J1 => "j1",
            Interval::JPlus => "jplus",
        }
    }

    pub fn space(self) -> FiniteClosureSpace {
        match self {
            Interval::J1 => standard_space(StandardKind::Path, 1, 0),
            Interval::JPlus => standard_space(StandardKind::JPlus, 1, 0),
        }
        .expect("standard intervals are valid")
    }

    /// `c({e})` inside the interval, as a two-bit mask.
    pub(crate) fn closure_bits(self, e: usize) -> usize {
        match (self, e) {
            (Interval::J1, _) => 0b11,
            (Interval::JPlus, 0) => 0b11,
            (Interval::JPlus, _) => 0b10,
        }
    }

    /// The standard n-simplex: indiscrete on `{0..n}` for `J₁`, the total
    /// order `c(i) = {j ≥ i}` for `J₊`.
    pub fn simplex_domain(self, n: usize) -> FiniteClosureSpace {
        let kind = match self {
            Interval::J1 => StandardKind::JTop,
            Interval::JPlus => StandardKind::JLe,
        };
        standard_space(kind, n, 0).expect("simplex sizes are small")
    }

    /// `J^{⊗n}` with corner `a` at index `a` (coordinate `aᵢ` is bit `i−1`).
    pub fn cube_domain(self, product: ProductKind, n: usize) -> Result<FiniteClosureSpace> {
        if n > 6 {
            return Err(Error::resource("cube dimension", 6));
        }
        let size = 1usize << n;
        let closure = (0..size)
            .map(|a| {
                let mut c = PointSet::EMPTY;
                match product {
                    ProductKind::Cross => {
                        for b in 0..size {
                            if (0..n)
                                .all(|i| self.closure_bits(a >> i & 1) >> (b >> i & 1) & 1 == 1)
                            {
                                c.insert(b);
                            }
                        }
                    }
                    ProductKind::Inductive => {
                        c.insert(a);
                        for i in 0..n {
                            let b = a ^ (1 << i);
                            if self.closure_bits(a >> i & 1) >> (b >> i & 1) & 1 == 1 {
                                c.insert(b);
                            }
                        }
                    }
                }
                c
            })
            .collect();
        let labels = (0..size)
            .map(|a| {
                (0..n)
                    .map(|i| if a >> i & 1 == 1 { '1' } else { '0' })
                    .collect::<String>()
            })
            .map(|s| if s.is_empty() { "*".to_string() } else { s })
            .collect();
        FiniteClosureSpace::new(labels, closure)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Flavor {
    Simplicial,
    Cubical,
}

impl Flavor {
    pub fn parse(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "simplicial" => Ok(Flavor::Simplicial),
            "cubical" => Ok(Flavor::Cubical),
            other => Err(Error::input(format!("unknown flavor `{other}`"))),
        }
    }
}

/// A homology theory: interval, product and flavor. Simplicial theories only
/// exist for the product closure.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct TheorySelector {
    pub interval: Interval,
    pub product: ProductKind,
    pub flavor: Flavor,
}

impl TheorySelector {
    pub fn new(interval: Interval, product: ProductKind, flavor: Flavor) -> Result<Self> {
        if flavor == Flavor::Simplicial && product != ProductKind::Cross {
            return Err(Error::Unsupported(
                "simplicial theories are defined for the product closure only".into(),
            ));
        }
        Ok(TheorySelector {
            interval,
            product,
            flavor,
        })
    }

    pub fn simplicial(interval: Interval) -> Self {
        TheorySelector {
            interval,
            product: ProductKind::Cross,
            flavor: Flavor::Simplicial,
        }
    }

    pub fn cubical(interval: Interval, product: ProductKind) -> Self {
        TheorySelector {
            interval,
            product,
            flavor: Flavor::Cubical,
        }
    }

    /// The six implemented theories: two simplicial, four cubical.
    pub fn all() -> Vec<TheorySelector> {
        let mut out: Vec<_> = Interval::ALL.iter().map(|&j| Self::simplicial(j)).collect();
        for j in Interval::ALL {
            for p in [ProductKind::Cross, ProductKind::Inductive] {
                out.push(Self::cubical(j, p));
            }
        }
        out
    }

    pub fn is_cross(&self) -> bool {
        self.product == ProductKind::Cross
    }
}

impl fmt::Display for TheorySelector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.flavor {
            Flavor::Simplicial => write!(f, "({}, simplicial)", self.interval.name()),
            Flavor::Cubical => {
                write!(
                    f,
                    "({}, {}, cubical)",
                    self.interval.name(),
                    self.product.name()
                )
            }
        }
    }
}
