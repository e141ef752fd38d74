use smallvec::SmallVec;

const RANK_MASK: u32 = 0xFFFF;

/// A sparse power product. Variables are identified by their rank in the
/// ambient ring's lex order (rank 0 is the greatest variable).
///
/// Each stored entry packs `(0xFFFF - rank) << 16 | exponent`, kept in
/// decreasing order. With that packing the derived `Ord` on the entry slice
/// *is* the lex order, so comparisons never consult the ring.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(SmallVec<[u32; 6]>);

#[inline]
fn pack(rank: u16, exp: u32) -> u32 {
    assert!(exp > 0 && exp <= 0xFFFF, "exponent {exp} out of range");
    ((RANK_MASK - rank as u32) << 16) | exp
}

#[inline]
fn rank_of(entry: u32) -> u16 {
    (RANK_MASK - (entry >> 16)) as u16
}

#[inline]
fn exp_of(entry: u32) -> u32 {
    entry & 0xFFFF
}

impl Monomial {
    pub fn one() -> Monomial {
        Monomial(SmallVec::new())
    }

    pub fn var(rank: u16, exp: u32) -> Monomial {
        if exp == 0 {
            return Monomial::one();
        }
        let mut v = SmallVec::new();
        v.push(pack(rank, exp));
        Monomial(v)
    }

    /// Build from `(rank, exponent)` pairs in any order; zero exponents are dropped
    /// and repeated ranks accumulate.
    pub fn from_exponents(pairs: impl IntoIterator<Item = (u16, u32)>) -> Monomial {
        let mut acc: Vec<(u16, u32)> = pairs.into_iter().filter(|&(_, e)| e > 0).collect();
        acc.sort_unstable_by_key(|&(r, _)| r);
        let mut out: SmallVec<[u32; 6]> = SmallVec::new();
        let mut i = 0;
        while i < acc.len() {
            let r = acc[i].0;
            let mut e = 0;
            while i < acc.len() && acc[i].0 == r {
                e += acc[i].1;
                i += 1;
            }
            out.push(pack(r, e));
        }
        Monomial(out)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    /// `(rank, exponent)` pairs, greatest variable first.
    pub fn iter(&self) -> impl Iterator<Item = (u16, u32)> + '_ {
        self.0.iter().map(|&e| (rank_of(e), exp_of(e)))
    }

    pub fn exponent(&self, rank: u16) -> u32 {
        self.iter().find(|&(r, _)| r == rank).map_or(0, |(_, e)| e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| exp_of(e)).sum()
    }

    pub fn num_vars(&self) -> usize {
        self.0.len()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = SmallVec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            let (ra, rb) = (a[i] >> 16, b[j] >> 16);
            if ra > rb {
                out.push(a[i]);
                i += 1;
            } else if ra < rb {
                out.push(b[j]);
                j += 1;
            } else {
                out.push(pack(rank_of(a[i]), exp_of(a[i]) + exp_of(b[j])));
                i += 1;
                j += 1;
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        let (a, b) = (&self.0, &other.0);
        if a.len() > b.len() {
            return false;
        }
        let mut j = 0;
        for &ea in a.iter() {
            let ra = ea >> 16;
            while j < b.len() && (b[j] >> 16) > ra {
                j += 1;
            }
            if j == b.len() || (b[j] >> 16) != ra || exp_of(b[j]) < exp_of(ea) {
                return false;
            }
            j += 1;
        }
        true
    }

    /// `other / self` when `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        let mut out = SmallVec::with_capacity(other.0.len());
        let mut i = 0;
        for &eb in other.0.iter() {
            if i < self.0.len() && (self.0[i] >> 16) == (eb >> 16) {
                let e = exp_of(eb) - exp_of(self.0[i]);
                if e > 0 {
                    out.push(pack(rank_of(eb), e));
                }
                i += 1;
            } else {
                out.push(eb);
            }
        }
        Some(Monomial(out))
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = SmallVec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            let (ra, rb) = (a[i] >> 16, b[j] >> 16);
            if ra > rb {
                out.push(a[i]);
                i += 1;
            } else if ra < rb {
                out.push(b[j]);
                j += 1;
            } else {
                out.push(a[i].max(b[j]));
                i += 1;
                j += 1;
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        let (a, b) = (&self.0, &other.0);
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            let (ra, rb) = (a[i] >> 16, b[j] >> 16);
            if ra == rb {
                return false;
            } else if ra > rb {
                i += 1;
            } else {
                j += 1;
            }
        }
        true
    }

    /// Re-index variables through `map` (old rank to new rank). The map must be
    /// injective on the ranks that occur.
    pub fn remap(&self, map: impl Fn(u16) -> u16) -> Monomial {
        Monomial::from_exponents(self.iter().map(|(r, e)| (map(r), e)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(pairs: &[(u16, u32)]) -> Monomial {
        Monomial::from_exponents(pairs.iter().copied())
    }

    #[test]
    fn lex_order_prefers_greater_variables() {
        // rank 0 is the greatest variable
        assert!(m(&[(0, 1)]) > m(&[(1, 5)]));
        assert!(m(&[(0, 1), (2, 1)]) > m(&[(0, 1), (3, 4)]));
        assert!(m(&[(1, 2)]) > m(&[(1, 1), (2, 9)]));
        assert!(m(&[(1, 1), (2, 1)]) > m(&[(1, 1)]));
        assert!(m(&[(3, 1)]) > Monomial::one());
    }

    #[test]
    fn arithmetic() {
        let a = m(&[(0, 1), (2, 3)]);
        let b = m(&[(2, 1), (4, 2)]);
        assert_eq!(a.mul(&b), m(&[(0, 1), (2, 4), (4, 2)]));
        assert_eq!(a.lcm(&b), m(&[(0, 1), (2, 3), (4, 2)]));
        assert!(b.divides(&a.mul(&b)));
        assert!(!b.divides(&a));
        assert_eq!(b.quotient_of(&a.mul(&b)), Some(a.clone()));
        assert!(!a.is_coprime(&b));
        assert!(m(&[(0, 1)]).is_coprime(&m(&[(1, 1)])));
        assert_eq!(a.degree(), 4);
        assert_eq!(a.exponent(2), 3);
    }

    #[test]
    fn from_exponents_merges_and_drops_zeros() {
        assert_eq!(m(&[(2, 1), (0, 0), (2, 2)]), m(&[(2, 3)]));
        assert!(m(&[(1, 0)]).is_one());
    }
}
