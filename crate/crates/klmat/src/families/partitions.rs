//! Integer partitions and set partitions.

use num_bigint::BigInt;

use super::counting::factorial;

/// An integer partition: a weakly decreasing list of positive parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    /// Builds a partition from any list of parts; zeros are dropped and the
    /// rest sorted into weakly decreasing order.
    pub fn new(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// `|lambda|`, the number being partitioned.
    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    /// `l(lambda)`, the number of parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// 1-based part access; zero beyond the last part.
    pub fn part(&self, j: usize) -> usize {
        if j == 0 {
            return 0;
        }
        self.parts.get(j - 1).copied().unwrap_or(0)
    }

    /// The transpose (conjugate) partition.
    pub fn transpose(&self) -> Partition {
        let first = self.part(1);
        Partition {
            parts: (1..=first)
                .map(|j| self.parts.iter().filter(|&&p| p >= j).count())
                .collect(),
        }
    }

    /// Adds 1 to every part (the `~nu` of the braid generating function).
    pub fn add_one_to_each(&self) -> Partition {
        Partition {
            parts: self.parts.iter().map(|&p| p + 1).collect(),
        }
    }
}

impl std::fmt::Display for Partition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// All partitions of `n` in reverse-lexicographic order: `(n)` first,
/// `(1,...,1)` last. `partitions_of(0)` is the empty partition alone.
pub fn partitions_of(n: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut buf = Vec::new();
    gen_partitions(n, n, &mut buf, &mut out);
    out
}

fn gen_partitions(rest: usize, max: usize, buf: &mut Vec<usize>, out: &mut Vec<Partition>) {
    if rest == 0 {
        out.push(Partition { parts: buf.clone() });
        return;
    }
    for p in (1..=max.min(rest)).rev() {
        buf.push(p);
        gen_partitions(rest - p, p, buf, out);
        buf.pop();
    }
}

/// The number of flats of type `lambda` in the partition lattice of `[n]`:
/// `m(lambda) = n! / (prod lambda_i! * prod_j (lambda^t_j - lambda^t_{j+1})!)`.
pub fn m_count(lam: &Partition) -> BigInt {
    let n = lam.size();
    let mut denom = BigInt::from(1);
    for &p in lam.parts() {
        denom *= factorial(p);
    }
    let t = lam.transpose();
    for j in 1..=lam.part(1) {
        denom *= factorial(t.part(j) - t.part(j + 1));
    }
    factorial(n) / denom
}

/// All set partitions of `{0, ..., n-1}` as sorted block lists, enumerated
/// through restricted growth strings.
pub fn set_partitions(n: usize) -> Vec<Vec<Vec<usize>>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    let mut rgs = vec![0usize; n];
    loop {
        let blocks = rgs.iter().copied().max().unwrap() + 1;
        let mut part = vec![Vec::new(); blocks];
        for (elem, &b) in rgs.iter().enumerate() {
            part[b].push(elem);
        }
        out.push(part);
        // next restricted growth string
        let mut i = n;
        loop {
            if i == 1 {
                return out;
            }
            i -= 1;
            let max_prefix = rgs[..i].iter().copied().max().unwrap();
            if rgs[i] <= max_prefix {
                rgs[i] += 1;
                for s in &mut rgs[i + 1..] {
                    *s = 0;
                }
                break;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::counting::bell;
    use num_traits::One;

    #[test]
    fn transpose_and_access() {
        let lam = Partition::new(vec![1, 2, 2]);
        assert_eq!(lam.parts(), &[2, 2, 1]);
        assert_eq!(lam.transpose().parts(), &[3, 2]);
        assert_eq!(lam.transpose().transpose(), lam);
        assert_eq!(lam.part(1), 2);
        assert_eq!(lam.part(4), 0);
        assert_eq!(Partition::empty().transpose(), Partition::empty());
    }

    #[test]
    fn enumeration_order() {
        let parts: Vec<Vec<usize>> = partitions_of(4)
            .into_iter()
            .map(|p| p.parts().to_vec())
            .collect();
        assert_eq!(
            parts,
            vec![
                vec![4],
                vec![3, 1],
                vec![2, 2],
                vec![2, 1, 1],
                vec![1, 1, 1, 1]
            ]
        );
        assert_eq!(partitions_of(0).len(), 1);
        assert_eq!(partitions_of(10).len(), 42);
    }

    #[test]
    fn flat_counts() {
        // only the bottom flat has all-singleton type
        assert_eq!(m_count(&Partition::new(vec![1; 7])), BigInt::one());
        // enumerated directly: set partitions of {1,2,3,4} by block sizes
        assert_eq!(m_count(&Partition::new(vec![2, 1, 1])), BigInt::from(6));
        assert_eq!(m_count(&Partition::new(vec![2, 2])), BigInt::from(3));
        assert_eq!(m_count(&Partition::new(vec![3, 1])), BigInt::from(4));
        assert_eq!(m_count(&Partition::empty()), BigInt::one());
    }

    #[test]
    fn m_count_vs_set_partition_enumeration() {
        for n in 1..=7 {
            for lam in partitions_of(n) {
                let expected = set_partitions(n)
                    .iter()
                    .filter(|blocks| {
                        let mut sizes: Vec<usize> = blocks.iter().map(Vec::len).collect();
                        sizes.sort_unstable_by(|a, b| b.cmp(a));
                        sizes == lam.parts()
                    })
                    .count();
                assert_eq!(m_count(&lam), BigInt::from(expected), "type {lam}");
            }
        }
    }

    #[test]
    fn set_partition_counts_are_bell_numbers() {
        for n in 0..=8 {
            assert_eq!(BigInt::from(set_partitions(n).len()), bell(n));
        }
        // sum over types matches too
        for n in 1..=15 {
            let total: BigInt = partitions_of(n).iter().map(m_count).sum();
            assert_eq!(total, bell(n));
        }
    }
}
