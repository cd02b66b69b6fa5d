use std::fmt;

use fixedbitset::FixedBitSet;
use num_bigint::BigUint;
use num_traits::{One, Zero};

macro_rules! index_subset {
    ($(#[$meta:meta])* $name:ident) => {
        $(#[$meta])*
        #[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
        pub struct $name(FixedBitSet);

        impl $name {
            pub fn empty(len: usize) -> Self {
                $name(FixedBitSet::with_capacity(len))
            }

            pub fn full(len: usize) -> Self {
                let mut s = FixedBitSet::with_capacity(len);
                s.insert_range(..);
                $name(s)
            }

            pub fn from_indices<I: IntoIterator<Item = usize>>(len: usize, items: I) -> Self {
                let mut s = Self::empty(len);
                for i in items {
                    s.insert(i);
                }
                s
            }

            /// Bit `i` of `mask` becomes member `i`; bits at or beyond `len` are ignored.
            pub fn from_mask(len: usize, mask: u64) -> Self {
                Self::from_indices(len, (0..len.min(64)).filter(|i| mask >> i & 1 == 1))
            }

            /// Host universe size (not the member count).
            pub fn universe(&self) -> usize {
                self.0.len()
            }

            pub fn count(&self) -> usize {
                self.0.count_ones(..)
            }

            pub fn is_empty(&self) -> bool {
                self.0.is_clear()
            }

            pub fn contains(&self, i: usize) -> bool {
                self.0.contains(i)
            }

            pub fn insert(&mut self, i: usize) {
                assert!(i < self.0.len(), "index {i} outside universe of {}", self.0.len());
                self.0.insert(i);
            }

            pub fn remove(&mut self, i: usize) {
                self.0.set(i, false);
            }

            pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
                self.0.ones()
            }

            pub fn first(&self) -> Option<usize> {
                self.0.minimum()
            }

            pub fn last(&self) -> Option<usize> {
                self.0.maximum()
            }

            pub fn union(&self, other: &Self) -> Self {
                let mut s = self.0.clone();
                s.union_with(&other.0);
                $name(s)
            }

            pub fn intersection(&self, other: &Self) -> Self {
                let mut s = self.0.clone();
                s.intersect_with(&other.0);
                $name(s)
            }

            pub fn difference(&self, other: &Self) -> Self {
                let mut s = self.0.clone();
                s.difference_with(&other.0);
                $name(s)
            }

            pub fn complement(&self) -> Self {
                let mut s = self.0.clone();
                s.toggle_range(..);
                $name(s)
            }

            pub fn is_subset(&self, other: &Self) -> bool {
                self.0.is_subset(&other.0)
            }

            pub fn is_disjoint(&self, other: &Self) -> bool {
                self.0.is_disjoint(&other.0)
            }

            /// Lowercase hex of `sum 2^i` over members; `"0"` when empty.
            pub fn to_hex(&self) -> String {
                let mut v = BigUint::zero();
                for i in self.0.ones() {
                    v |= BigUint::one() << i;
                }
                v.to_str_radix(16)
            }

            pub fn from_hex(len: usize, hex: &str) -> Option<Self> {
                let v = BigUint::parse_bytes(hex.trim().as_bytes(), 16)?;
                if v.bits() as usize > len {
                    return None;
                }
                Some(Self::from_indices(len, (0..len).filter(|&i| v.bit(i as u64))))
            }
        }

        impl fmt::Debug for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.debug_set().entries(self.iter()).finish()
            }
        }
    };
}

index_subset!(
    /// A set of vertex indices of a host graph.
    VertexSubset
);
index_subset!(
    /// A set of edge indices of a host graph.
    EdgeSubset
);

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hex_round_trip() {
        let s = VertexSubset::from_indices(70, [0, 3, 65]);
        assert_eq!(s.to_hex(), "20000000000000009");
        assert_eq!(VertexSubset::from_hex(70, &s.to_hex()).unwrap(), s);
        assert_eq!(VertexSubset::empty(4).to_hex(), "0");
        assert!(VertexSubset::from_hex(3, "f").is_none());
    }

    #[test]
    fn set_algebra() {
        let a = EdgeSubset::from_mask(5, 0b00111);
        let b = EdgeSubset::from_mask(5, 0b01100);
        assert_eq!(a.intersection(&b), EdgeSubset::from_indices(5, [2]));
        assert_eq!(a.union(&b).count(), 4);
        assert_eq!(a.complement(), EdgeSubset::from_indices(5, [3, 4]));
        assert!(EdgeSubset::from_indices(5, [1]).is_subset(&a));
    }
}
