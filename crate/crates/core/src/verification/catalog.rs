//! Functions exercised by the randomized suites and how their intervals are
//! drawn.

use rand::Rng;

use crate::error::{domain, Result};
use crate::function::{FunctionKind, FunctionSpec, Interval};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CatalogFn {
    TLogT,
    NegLog,
    Square,
    Tsallis05,
    Reciprocal,
    Sqrt,
}

impl CatalogFn {
    /// The four functions every theorem suite is run against.
    pub const CORE: [CatalogFn; 4] =
        [CatalogFn::TLogT, CatalogFn::NegLog, CatalogFn::Square, CatalogFn::Tsallis05];

    /// Default rotation: the core set plus a second convex power and a
    /// concave one (which exercises the reversed inequalities).
    pub const ROTATION: [CatalogFn; 6] = [
        CatalogFn::TLogT,
        CatalogFn::NegLog,
        CatalogFn::Square,
        CatalogFn::Tsallis05,
        CatalogFn::Reciprocal,
        CatalogFn::Sqrt,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CatalogFn::TLogT => "tlogt",
            CatalogFn::NegLog => "neglog",
            CatalogFn::Square => "power2",
            CatalogFn::Tsallis05 => "tsallis0.5",
            CatalogFn::Reciprocal => "inverse",
            CatalogFn::Sqrt => "sqrt",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        Self::ROTATION
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| {
                domain(format!(
                    "unknown function `{s}` (expected one of {})",
                    Self::ROTATION.map(|f| f.name()).join(", ")
                ))
            })
    }

    pub fn kind(self) -> FunctionKind {
        match self {
            CatalogFn::TLogT => FunctionKind::TLogT,
            CatalogFn::NegLog => FunctionKind::NegLog,
            CatalogFn::Square => FunctionKind::PowerR(2.0),
            CatalogFn::Tsallis05 => FunctionKind::TsallisF(0.5),
            CatalogFn::Reciprocal => FunctionKind::PowerR(-1.0),
            CatalogFn::Sqrt => FunctionKind::PowerR(0.5),
        }
    }

    /// Draws an interval for this function. Even trials use the canonical
    /// interval where a closed form exists, odd trials a random one, so both
    /// the closed-form and the oracle code paths are exercised. A user
    /// supplied `[m, M]` or `eps` takes precedence.
    pub fn draw_spec<R: Rng + ?Sized>(
        self,
        rng: &mut R,
        canonical: bool,
        fixed: Option<(f64, f64)>,
        eps: Option<f64>,
    ) -> Result<FunctionSpec> {
        let iv = match (fixed, self) {
            (Some((m, big_m)), _) => Interval::new(m, big_m)?,
            (None, CatalogFn::TLogT | CatalogFn::Tsallis05) => {
                if canonical {
                    Interval::new(0.0, 1.0)?
                } else {
                    let lo = rng.random_range(0.0..1.5);
                    Interval::new(lo, lo + rng.random_range(0.1..2.0))?
                }
            }
            (None, CatalogFn::NegLog) => {
                if canonical || eps.is_some() {
                    let e = eps.unwrap_or_else(|| rng.random_range(0.01..0.8));
                    Interval::new(e, 1.0)?
                } else {
                    let lo = rng.random_range(0.05..2.0);
                    Interval::new(lo, lo * rng.random_range(1.1..20.0))?
                }
            }
            (None, CatalogFn::Square | CatalogFn::Sqrt) => {
                let lo = if canonical { rng.random_range(0.1..2.0) } else { rng.random_range(0.0..2.0) };
                Interval::new(lo, lo + rng.random_range(0.1..4.0))?
            }
            (None, CatalogFn::Reciprocal) => {
                let lo = rng.random_range(0.1..2.0);
                Interval::new(lo, lo * rng.random_range(1.1..10.0))?
            }
        };
        FunctionSpec::new(self.kind(), iv)
    }
}
