use std::fmt;
use std::str::FromStr;
use std::sync::{OnceLock, RwLock};

use crate::algebra::{LambdaPoly, Ring, XPoly};

use super::{falling_factorial, falling_factorial_lambda};

/// The four change-of-basis triangles among x^n, (x)_n and (x)_{n,λ}.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StirlingKind {
    /// `(x)_n = Σ S₁(n,l) x^l`
    S1,
    /// `x^n = Σ S₂(n,l) (x)_l`
    S2,
    /// `(x)_n = Σ S_{1,λ}(n,l) (x)_{l,λ}`
    S1Deg,
    /// `(x)_{n,λ} = Σ S_{2,λ}(n,l) (x)_l`
    S2Deg,
}

impl StirlingKind {
    pub const ALL: [StirlingKind; 4] = [Self::S1, Self::S2, Self::S1Deg, Self::S2Deg];

    pub fn name(self) -> &'static str {
        match self {
            Self::S1 => "stirling1",
            Self::S2 => "stirling2",
            Self::S1Deg => "stirling1_deg",
            Self::S2Deg => "stirling2_deg",
        }
    }

    fn slot(self) -> usize {
        match self {
            Self::S1 => 0,
            Self::S2 => 1,
            Self::S1Deg => 2,
            Self::S2Deg => 3,
        }
    }

    pub fn is_degenerate(self) -> bool {
        matches!(self, Self::S1Deg | Self::S2Deg)
    }

    /// The partner kind whose table is the matrix inverse of this one.
    pub fn inverse(self) -> Self {
        match self {
            Self::S1 => Self::S2,
            Self::S2 => Self::S1,
            Self::S1Deg => Self::S2Deg,
            Self::S2Deg => Self::S1Deg,
        }
    }

    /// Left-hand basis element of the defining expansion.
    fn target(self, n: usize) -> XPoly {
        match self {
            Self::S1 | Self::S1Deg => falling_factorial(n),
            Self::S2 => XPoly::monomial(LambdaPoly::one(), n),
            Self::S2Deg => falling_factorial_lambda(n),
        }
    }

    /// Right-hand basis element; monic of degree `l` in x.
    fn basis(self, l: usize) -> XPoly {
        match self {
            Self::S1 => XPoly::monomial(LambdaPoly::one(), l),
            Self::S2 | Self::S2Deg => falling_factorial(l),
            Self::S1Deg => falling_factorial_lambda(l),
        }
    }

    fn compute_row(self, n: usize) -> Vec<LambdaPoly> {
        let basis: Vec<XPoly> = (0..=n).map(|l| self.basis(l)).collect();
        solve_monic_basis(&self.target(n), &basis)
    }
}

impl fmt::Display for StirlingKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for StirlingKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| format!("unknown Stirling kind `{s}`"))
    }
}

/// Expands `target` in a basis of monic polynomials with `deg basis[l] = l`.
///
/// Back-substitution from the top degree down; the system is unitriangular,
/// so the solution is unique and needs no division.
pub(crate) fn solve_monic_basis(target: &XPoly, basis: &[XPoly]) -> Vec<LambdaPoly> {
    let mut rem = target.clone();
    let mut out = vec![LambdaPoly::zero(); basis.len()];
    for l in (0..basis.len()).rev() {
        let c = rem.coeff(l);
        if c.is_zero() {
            continue;
        }
        debug_assert_eq!(basis[l].degree(), Some(l));
        rem.sub_assign(&basis[l].scale_by(&c));
        out[l] = c;
    }
    assert!(rem.is_zero(), "target degree exceeds basis size");
    out
}

type Rows = Vec<Vec<LambdaPoly>>;

fn cache() -> &'static [RwLock<Rows>; 4] {
    static CACHE: OnceLock<[RwLock<Rows>; 4]> = OnceLock::new();
    CACHE.get_or_init(|| std::array::from_fn(|_| RwLock::new(Vec::new())))
}

/// Ensures rows `0..=n` of `kind` are cached, filling them in row order.
fn ensure_rows(kind: StirlingKind, n: usize) {
    let lock = &cache()[kind.slot()];
    if lock.read().expect("stirling cache poisoned").len() > n {
        return;
    }
    let mut rows = lock.write().expect("stirling cache poisoned");
    while rows.len() <= n {
        let next = rows.len();
        rows.push(kind.compute_row(next));
    }
}

/// Entry `(n, k)` of a Stirling triangle; zero for `k > n`.
pub fn stirling(kind: StirlingKind, n: usize, k: usize) -> LambdaPoly {
    if k > n {
        return LambdaPoly::zero();
    }
    ensure_rows(kind, n);
    cache()[kind.slot()].read().expect("stirling cache poisoned")[n][k].clone()
}

/// Row `n` of a Stirling triangle, entries for `k = 0..=n`.
pub fn stirling_row(kind: StirlingKind, n: usize) -> Vec<LambdaPoly> {
    ensure_rows(kind, n);
    cache()[kind.slot()].read().expect("stirling cache poisoned")[n].clone()
}

/// A snapshot of the first rows of one Stirling triangle.
#[derive(Clone, Debug, PartialEq)]
pub struct TriangularTable {
    kind: StirlingKind,
    rows: Vec<Vec<LambdaPoly>>,
}

impl TriangularTable {
    pub fn new(kind: StirlingKind, n_max: usize) -> Self {
        ensure_rows(kind, n_max);
        let rows = cache()[kind.slot()].read().expect("stirling cache poisoned")[..=n_max].to_vec();
        Self { kind, rows }
    }

    pub fn kind(&self) -> StirlingKind {
        self.kind
    }

    pub fn n_max(&self) -> usize {
        self.rows.len() - 1
    }

    pub fn rows(&self) -> &[Vec<LambdaPoly>] {
        &self.rows
    }

    pub fn entry(&self, n: usize, k: usize) -> LambdaPoly {
        self.rows
            .get(n)
            .and_then(|row| row.get(k))
            .cloned()
            .unwrap_or_else(LambdaPoly::zero)
    }

    /// `Σ_k self(n,k)·other(k,m)` for `n, m ≤ min(n_max)`.
    pub fn product_entry(&self, other: &Self, n: usize, m: usize) -> LambdaPoly {
        let mut acc = LambdaPoly::zero();
        for k in m..=n {
            acc.add_product(&self.entry(n, k), &other.entry(k, m));
        }
        acc
    }
}
