//! Edge-set masks for the coloring search. Narrow graphs (up to 128 edges)
//! use a single `u128`; wider graphs fall back to boxed word arrays.

pub(crate) trait EdgeMask: Clone + PartialEq + Eq + std::fmt::Debug {
    fn zeros(bits: usize) -> Self;
    fn set(&mut self, i: usize);
    fn clear(&mut self, i: usize);
    fn intersects(&self, other: &Self) -> bool;
    /// `|self \ (a ∪ b)|`.
    fn minus_union_count(&self, a: &Self, b: &Self) -> usize;
    /// The unique element of `self \ (a ∪ b)` when there is exactly one.
    fn minus_union_single(&self, a: &Self, b: &Self) -> Option<usize>;
}

impl EdgeMask for u128 {
    fn zeros(bits: usize) -> Self {
        debug_assert!(bits <= 128);
        0
    }

    #[inline]
    fn set(&mut self, i: usize) {
        *self |= 1u128 << i;
    }

    #[inline]
    fn clear(&mut self, i: usize) {
        *self &= !(1u128 << i);
    }

    #[inline]
    fn intersects(&self, other: &Self) -> bool {
        self & other != 0
    }

    #[inline]
    fn minus_union_count(&self, a: &Self, b: &Self) -> usize {
        (self & !(a | b)).count_ones() as usize
    }

    #[inline]
    fn minus_union_single(&self, a: &Self, b: &Self) -> Option<usize> {
        let rem = self & !(a | b);
        if rem != 0 && rem & (rem - 1) == 0 {
            Some(rem.trailing_zeros() as usize)
        } else {
            None
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub(crate) struct WideMask(Box<[u64]>);

impl EdgeMask for WideMask {
    fn zeros(bits: usize) -> Self {
        WideMask(vec![0; bits.div_ceil(64).max(1)].into_boxed_slice())
    }

    #[inline]
    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1u64 << (i % 64);
    }

    #[inline]
    fn clear(&mut self, i: usize) {
        self.0[i / 64] &= !(1u64 << (i % 64));
    }

    fn intersects(&self, other: &Self) -> bool {
        self.0.iter().zip(other.0.iter()).any(|(&x, &y)| x & y != 0)
    }

    fn minus_union_count(&self, a: &Self, b: &Self) -> usize {
        self.0
            .iter()
            .zip(a.0.iter().zip(b.0.iter()))
            .map(|(&m, (&x, &y))| (m & !(x | y)).count_ones() as usize)
            .sum()
    }

    fn minus_union_single(&self, a: &Self, b: &Self) -> Option<usize> {
        let mut single = None;
        for (wi, (&m, (&x, &y))) in self.0.iter().zip(a.0.iter().zip(b.0.iter())).enumerate() {
            let rem = m & !(x | y);
            if rem == 0 {
                continue;
            }
            if rem & (rem - 1) != 0 || single.is_some() {
                return None;
            }
            single = Some(wi * 64 + rem.trailing_zeros() as usize);
        }
        single
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check<M: EdgeMask>(bits: usize) {
        let mut m = M::zeros(bits);
        m.set(0);
        m.set(bits - 1);
        let mut a = M::zeros(bits);
        let b = M::zeros(bits);
        assert!(!m.intersects(&a));
        assert_eq!(m.minus_union_count(&a, &b), 2);
        assert_eq!(m.minus_union_single(&a, &b), None);
        a.set(0);
        assert!(m.intersects(&a));
        assert_eq!(m.minus_union_count(&a, &b), 1);
        assert_eq!(m.minus_union_single(&a, &b), Some(bits - 1));
        a.set(bits - 1);
        assert_eq!(m.minus_union_count(&a, &b), 0);
        assert_eq!(m.minus_union_single(&a, &b), None);
    }

    #[test]
    fn narrow_and_wide_agree() {
        check::<u128>(100);
        check::<WideMask>(100);
        check::<WideMask>(200);
    }
}
