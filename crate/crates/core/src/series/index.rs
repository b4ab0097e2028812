use core::cmp::Ordering;
use core::fmt;

/// Exponent pair `(k, l)` of the monomial `z1^k z2^l`.
///
/// Ordered by total degree, then by decreasing `k`, so degree one reads
/// `(1,0), (0,1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct MultiIndex {
    pub k: u32,
    pub l: u32,
}

impl MultiIndex {
    pub const ZERO: Self = Self { k: 0, l: 0 };

    pub const fn new(k: u32, l: u32) -> Self {
        Self { k, l }
    }

    pub const fn total(self) -> u32 {
        self.k + self.l
    }

    pub fn checked_sub(self, other: Self) -> Option<Self> {
        Some(Self { k: self.k.checked_sub(other.k)?, l: self.l.checked_sub(other.l)? })
    }

    /// Signed difference `self - other`.
    pub fn offset(self, other: Self) -> (i64, i64) {
        (self.k as i64 - other.k as i64, self.l as i64 - other.l as i64)
    }
}

impl core::ops::Add for MultiIndex {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        Self { k: self.k + rhs.k, l: self.l + rhs.l }
    }
}

impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total().cmp(&other.total()).then(other.k.cmp(&self.k))
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.k, self.l)
    }
}
