//! Vertex identifiers and edge weights.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Add;

/// Largest finite weight accepted on input. Any simple path of at most
/// `u32::MAX` such edges sums well below `u64::MAX`.
pub const MAX_INPUT_WEIGHT: u64 = u32::MAX as u64;

/// 1-based vertex identifier, stable for the whole lifetime of a graph.
///
/// A vertex keeps its id while the graph is contracted, so matrices can be
/// indexed by original id at every stage.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(u32);

impl VertexId {
    /// Panics on zero; ids are 1-based.
    pub fn new(id: u32) -> Self {
        assert!(id >= 1, "vertex ids are 1-based");
        VertexId(id)
    }

    pub fn get(self) -> u32 {
        self.0
    }

    /// Zero-based slot for dense storage.
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize - 1
    }

    #[inline]
    pub fn from_index(index: usize) -> Self {
        VertexId(index as u32 + 1)
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// A non-negative path or edge length, or the reserved `INFINITY` sentinel.
///
/// `INFINITY` absorbs additions. Adding two finite weights that would reach
/// the sentinel's bit pattern panics: that is an overflow, never "no edge".
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Weight(u64);

impl Weight {
    pub const ZERO: Weight = Weight(0);
    pub const INFINITY: Weight = Weight(u64::MAX);

    /// Panics if `value` collides with the infinity sentinel.
    pub fn new(value: u64) -> Self {
        assert!(value != u64::MAX, "finite weight collides with INFINITY");
        Weight(value)
    }

    #[inline]
    pub fn is_finite(self) -> bool {
        self.0 != u64::MAX
    }

    #[inline]
    pub fn is_infinite(self) -> bool {
        self.0 == u64::MAX
    }

    /// The finite value, or `None` for `INFINITY`.
    pub fn finite(self) -> Option<u64> {
        self.is_finite().then_some(self.0)
    }

    /// Raw encoding with `u64::MAX` meaning infinity. Used by dense matrices.
    #[inline]
    pub(crate) fn raw(self) -> u64 {
        self.0
    }

    #[inline]
    pub(crate) fn from_raw(raw: u64) -> Self {
        Weight(raw)
    }
}

/// Sum of two raw-encoded weights, with infinity absorbing.
#[inline]
pub(crate) fn add_raw(a: u64, b: u64) -> u64 {
    if a == u64::MAX || b == u64::MAX {
        return u64::MAX;
    }
    match a.checked_add(b) {
        Some(s) if s != u64::MAX => s,
        _ => panic!("weight overflow: {a} + {b}"),
    }
}

impl Add for Weight {
    type Output = Weight;

    #[inline]
    fn add(self, rhs: Weight) -> Weight {
        Weight(add_raw(self.0, rhs.0))
    }
}

impl Ord for Weight {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.cmp(&other.0)
    }
}

impl PartialOrd for Weight {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.finite() {
            Some(v) => v.fmt(f),
            None => f.write_str("INF"),
        }
    }
}

impl From<u32> for Weight {
    fn from(v: u32) -> Self {
        Weight(v as u64)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn infinity_orders_above_finite() {
        assert!(Weight::INFINITY > Weight::new(u64::MAX - 1));
        assert!(Weight::ZERO < Weight::new(1));
    }

    #[test]
    fn infinity_absorbs() {
        assert_eq!(Weight::INFINITY + Weight::new(3), Weight::INFINITY);
        assert_eq!(Weight::new(3) + Weight::INFINITY, Weight::INFINITY);
        assert_eq!(Weight::new(3) + Weight::new(4), Weight::new(7));
    }

    #[test]
    #[should_panic(expected = "weight overflow")]
    fn overflow_is_not_infinity() {
        let _ = Weight::new(u64::MAX - 1) + Weight::new(1);
    }

    #[test]
    fn vertex_index_round_trip() {
        let v = VertexId::new(17);
        assert_eq!(v.index(), 16);
        assert_eq!(VertexId::from_index(16), v);
    }

    #[test]
    fn display() {
        assert_eq!(Weight::INFINITY.to_string(), "INF");
        assert_eq!(Weight::new(12).to_string(), "12");
    }
}
