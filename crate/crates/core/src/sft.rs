//! One-sided subshifts of finite type: admissible words, cylinders,
//! periodic orbits, higher-block recodings and certified topological
//! entropy.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::num::{Enclosure, Rat};

/// A finite word over the alphabet `{0, .., d-1}`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(pub Vec<u8>);

impl Word {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn symbols(&self) -> &[u8] {
        &self.0
    }

    pub fn prefix(&self, j: usize) -> Word {
        Word(self.0[..j].to_vec())
    }
}

impl core::fmt::Debug for Word {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        let dotted = self.0.iter().any(|&x| x > 9);
        for (i, s) in self.0.iter().enumerate() {
            if i > 0 && dotted {
                write!(f, ".")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

impl core::fmt::Display for Word {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "{self:?}")
    }
}

/// A subshift of finite type: alphabet size, 0/1 transition matrix and the
/// metric base `theta` of the cylinder metric.
#[derive(Clone, Debug, PartialEq)]
pub struct Sft {
    d: usize,
    transitions: Vec<Vec<u8>>,
    theta: Rat,
}

impl Sft {
    /// Validates shape, `0 < theta < 1`, and that no symbol is stranded
    /// (every row and column has at least one 1).
    pub fn new(transitions: Vec<Vec<u8>>, theta: Rat) -> Result<Sft> {
        let d = transitions.len();
        if d == 0 {
            return Err(Error::InvalidInput(String::from("empty alphabet")));
        }
        for row in &transitions {
            if row.len() != d {
                return Err(Error::InvalidInput(String::from("transition matrix not square")));
            }
            if row.iter().any(|&x| x > 1) {
                return Err(Error::InvalidInput(String::from("transition entries must be 0/1")));
            }
        }
        for i in 0..d {
            if transitions[i].iter().all(|&x| x == 0) {
                return Err(Error::InvalidInput(format!("symbol {i} has no outgoing transition")));
            }
            if (0..d).all(|j| transitions[j][i] == 0) {
                return Err(Error::InvalidInput(format!("symbol {i} has no incoming transition")));
            }
        }
        if !(theta.is_positive() && theta < Rat::one()) {
            return Err(Error::InvalidInput(String::from("theta must lie in (0,1)")));
        }
        Ok(Sft { d, transitions, theta })
    }

    /// The full shift on `d` symbols.
    pub fn full_shift(d: usize, theta: Rat) -> Sft {
        Sft::new(vec![vec![1; d]; d], theta).expect("full shift is valid")
    }

    pub fn alphabet_size(&self) -> usize {
        self.d
    }

    pub fn theta(&self) -> &Rat {
        &self.theta
    }

    pub fn transitions(&self) -> &[Vec<u8>] {
        &self.transitions
    }

    pub fn allows(&self, a: u8, b: u8) -> bool {
        self.transitions[a as usize][b as usize] == 1
    }

    /// Is the word admissible (every consecutive transition allowed)?
    pub fn word_admissible(&self, w: &Word) -> bool {
        w.symbols().iter().all(|&s| (s as usize) < self.d)
            && w.symbols().windows(2).all(|p| self.allows(p[0], p[1]))
    }

    /// Transitivity: the transition matrix is irreducible.  Computed
    /// exactly by reachability closure.
    pub fn is_irreducible(&self) -> bool {
        let d = self.d;
        let mut reach = self.transitions.clone();
        for k in 0..d {
            for i in 0..d {
                if reach[i][k] == 1 {
                    for j in 0..d {
                        if reach[k][j] == 1 {
                            reach[i][j] = 1;
                        }
                    }
                }
            }
        }
        (0..d).all(|i| (0..d).all(|j| reach[i][j] == 1))
    }

    /// All admissible words of length `k`, in lexicographic order.
    pub fn nonempty_cylinders(&self, k: usize) -> Vec<Word> {
        assert!(k >= 1, "cylinder length must be at least 1");
        let mut out = Vec::new();
        let mut stack: Vec<Vec<u8>> = (0..self.d as u8).rev().map(|s| vec![s]).collect();
        while let Some(w) = stack.pop() {
            if w.len() == k {
                out.push(Word(w));
                continue;
            }
            let last = *w.last().unwrap();
            for next in (0..self.d as u8).rev() {
                if self.allows(last, next) {
                    let mut nw = w.clone();
                    nw.push(next);
                    stack.push(nw);
                }
            }
        }
        out
    }

    /// `m_c(k)`: the number of nonempty cylinders of length `k`.
    pub fn cylinder_count(&self, k: usize) -> usize {
        self.nonempty_cylinders(k).len()
    }

    /// The periodic point generated by `tau`, reduced to its prime period
    /// and canonical rotation.
    pub fn orbit_of(&self, tau: &Word) -> Result<PeriodicOrbit> {
        if tau.is_empty() {
            return Err(Error::InvalidInput(String::from("empty generating segment")));
        }
        let n = tau.len();
        let s = tau.symbols();
        for i in 0..n {
            let a = s[i];
            let b = s[(i + 1) % n];
            if (a as usize) >= self.d || (b as usize) >= self.d || !self.allows(a, b) {
                return Err(Error::NotAdmissible(format!(
                    "transition {a} -> {b} forbidden in orbit of {tau}"
                )));
            }
        }
        Ok(PeriodicOrbit::from_segment(s))
    }

    /// Higher-block recoding: the conjugate SFT whose symbols are the
    /// nonempty `k`-cylinders.
    pub fn higher_block_recode(&self, k: usize) -> Result<BlockRecoding> {
        assert!(k >= 1);
        if !self.is_irreducible() {
            return Err(Error::NotTransitive);
        }
        let cylinders = self.nonempty_cylinders(k);
        let index: BTreeMap<Word, usize> =
            cylinders.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
        let m = cylinders.len();
        let mut transitions = vec![vec![0u8; m]; m];
        for (i, w) in cylinders.iter().enumerate() {
            for (j, v) in cylinders.iter().enumerate() {
                let ok = if k == 1 {
                    self.allows(w.symbols()[0], v.symbols()[0])
                } else {
                    w.symbols()[1..] == v.symbols()[..k - 1]
                };
                if ok {
                    transitions[i][j] = 1;
                }
            }
        }
        let recoded = Sft::new(transitions, self.theta.clone())?;
        Ok(BlockRecoding { k, cylinders, index, recoded })
    }

    /// Certified topological entropy: an enclosure of width `<= 2^-n`
    /// containing the log of the Perron root of the transition matrix.
    pub fn topological_entropy(&self, n: u32) -> Result<Enclosure> {
        if !self.is_irreducible() {
            return Err(Error::NotTransitive);
        }
        let m: Vec<Vec<Enclosure>> = self
            .transitions
            .iter()
            .map(|row| row.iter().map(|&x| Enclosure::from_int(x as i64)).collect())
            .collect();
        crate::perron::perron_log_enclosure(&m, n)
    }
}

/// A periodic orbit, stored by the lexicographically minimal rotation of
/// its prime-period generating segment.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct PeriodicOrbit {
    word: Word,
}

impl PeriodicOrbit {
    /// Reduce a segment to prime period and canonical rotation.  The
    /// segment is assumed admissible (checked by [`Sft::orbit_of`]).
    pub fn from_segment(s: &[u8]) -> PeriodicOrbit {
        let n = s.len();
        // Prime period: smallest divisor p of n with s p-periodic.
        let mut period = n;
        for p in 1..=n / 2 {
            if n.is_multiple_of(p) && (0..n).all(|i| s[i] == s[i % p]) {
                period = p;
                break;
            }
        }
        let seg = &s[..period];
        // Canonical rotation: lexicographically minimal.
        let mut best: Vec<u8> = seg.to_vec();
        for r in 1..period {
            let rot: Vec<u8> = (0..period).map(|i| seg[(i + r) % period]).collect();
            if rot < best {
                best = rot;
            }
        }
        PeriodicOrbit { word: Word(best) }
    }

    /// Prime period.
    pub fn period(&self) -> usize {
        self.word.len()
    }

    /// The canonical generating segment.
    pub fn segment(&self) -> &Word {
        &self.word
    }

    /// The `k`-window starting at position `i` of the periodic extension.
    pub fn window(&self, i: usize, k: usize) -> Word {
        let n = self.period();
        Word((0..k).map(|j| self.word.symbols()[(i + j) % n]).collect())
    }

    /// The `k`-cylinder support: the set of `k`-windows along the orbit.
    pub fn cylinder_support(&self, k: usize) -> BTreeSet<Word> {
        (0..self.period()).map(|i| self.window(i, k)).collect()
    }

    /// Is the orbit `k`-elementary (all `k`-windows pairwise distinct)?
    pub fn is_elementary(&self, k: usize) -> bool {
        self.cylinder_support(k).len() == self.period()
    }
}

impl core::fmt::Debug for PeriodicOrbit {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "O({})", self.word)
    }
}

impl core::fmt::Display for PeriodicOrbit {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "O({})", self.word)
    }
}

/// The higher-block recoding of an SFT: a bijection between nonempty
/// `k`-cylinders and the symbols of a conjugate SFT.
#[derive(Clone, Debug)]
pub struct BlockRecoding {
    k: usize,
    cylinders: Vec<Word>,
    index: BTreeMap<Word, usize>,
    recoded: Sft,
}

impl BlockRecoding {
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn cylinders(&self) -> &[Word] {
        &self.cylinders
    }

    pub fn cylinder_index(&self, w: &Word) -> Option<usize> {
        self.index.get(w).copied()
    }

    pub fn recoded(&self) -> &Sft {
        &self.recoded
    }

    pub fn symbol_count(&self) -> usize {
        self.cylinders.len()
    }

    /// Push a periodic orbit of the base SFT through the conjugacy: the
    /// image orbit's symbols are the `k`-cylinders along the original.
    pub fn push_orbit(&self, orbit: &PeriodicOrbit) -> Result<PeriodicOrbit> {
        let n = orbit.period();
        let mut symbols = Vec::with_capacity(n);
        for i in 0..n {
            let w = orbit.window(i, self.k);
            let idx = self
                .index
                .get(&w)
                .ok_or_else(|| Error::DomainMismatch(format!("window {w} not a cylinder")))?;
            if *idx > u8::MAX as usize {
                return Err(Error::TooLarge);
            }
            symbols.push(*idx as u8);
        }
        Ok(PeriodicOrbit::from_segment(&symbols))
    }

    /// Pull a recoded orbit back to the base SFT by reading first symbols.
    pub fn pull_orbit(&self, orbit: &PeriodicOrbit) -> PeriodicOrbit {
        let symbols: Vec<u8> = orbit
            .segment()
            .symbols()
            .iter()
            .map(|&c| self.cylinders[c as usize].symbols()[0])
            .collect();
        PeriodicOrbit::from_segment(&symbols)
    }
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::*;
    use crate::num::rat;

    pub fn golden_mean() -> Sft {
        Sft::new(vec![vec![1, 1], vec![1, 0]], rat(1, 2)).unwrap()
    }

    pub fn star() -> Sft {
        Sft::new(
            vec![
                vec![0, 1, 1, 1],
                vec![1, 0, 0, 0],
                vec![1, 0, 0, 0],
                vec![1, 0, 0, 0],
            ],
            rat(1, 2),
        )
        .unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::fixtures::{golden_mean, star};
    use super::*;
    use crate::num::rat;

    fn w(s: &[u8]) -> Word {
        Word(s.to_vec())
    }

    #[test]
    fn irreducibility() {
        assert!(Sft::full_shift(2, rat(1, 2)).is_irreducible());
        assert!(golden_mean().is_irreducible());
        let disconnected = Sft::new(vec![vec![1, 0], vec![0, 1]], rat(1, 2)).unwrap();
        assert!(!disconnected.is_irreducible());
        assert!(star().is_irreducible());
    }

    #[test]
    fn cylinders_lexicographic() {
        let full = Sft::full_shift(2, rat(1, 2));
        assert_eq!(full.nonempty_cylinders(2), vec![w(&[0, 0]), w(&[0, 1]), w(&[1, 0]), w(&[1, 1])]);
        let gm = golden_mean();
        assert_eq!(gm.nonempty_cylinders(2), vec![w(&[0, 0]), w(&[0, 1]), w(&[1, 0])]);
        assert_eq!(star().nonempty_cylinders(1).len(), 4);
    }

    #[test]
    fn cylinder_count_monotone() {
        let gm = golden_mean();
        for k in 1..6 {
            let a = gm.cylinder_count(k);
            let b = gm.cylinder_count(k + 1);
            assert!(b <= 2 * a);
        }
        let full = Sft::full_shift(2, rat(1, 2));
        assert_eq!(full.cylinder_count(5), 32);
    }

    #[test]
    fn topological_entropy_known_values() {
        // Full d-shift: log d.
        let full = Sft::full_shift(2, rat(1, 2));
        let e = full.topological_entropy(36).unwrap();
        assert!(e.overlaps(&crate::num::interval::ln2(50)));
        // Star graph: Perron root sqrt(3), entropy ln(3)/2.
        let e = star().topological_entropy(36).unwrap();
        let ln3 = crate::num::interval::ln_dyadic(&crate::num::Dyadic::from_int(3), 50);
        let half = crate::num::rat(1, 2);
        assert!(e.overlaps(&ln3.scale_rat(&half, 50)));
        // Reducible inputs are rejected here, not at construction.
        let reducible = Sft::new(vec![vec![1, 1], vec![0, 1]], rat(1, 2)).unwrap();
        assert!(matches!(reducible.topological_entropy(10), Err(Error::NotTransitive)));
    }

    #[test]
    fn orbit_admissibility_and_prime_period() {
        let gm = golden_mean();
        let o = gm.orbit_of(&w(&[0, 1])).unwrap();
        assert_eq!(o.period(), 2);
        assert!(matches!(gm.orbit_of(&w(&[1, 1])), Err(Error::NotAdmissible(_))));
        let reduced = gm.orbit_of(&w(&[0, 1, 0, 1])).unwrap();
        assert_eq!(reduced.period(), 2);
        assert_eq!(reduced, o);
        // Wrap-around: 011 has interior transition 1 -> 1 forbidden.
        assert!(gm.orbit_of(&w(&[0, 1, 1])).is_err());
    }

    #[test]
    fn supports_and_elementarity() {
        let gm = golden_mean();
        let o = gm.orbit_of(&w(&[0, 0, 1])).unwrap();
        let sup = o.cylinder_support(2);
        assert_eq!(sup.len(), 3);
        assert!(sup.contains(&w(&[0, 0])) && sup.contains(&w(&[0, 1])) && sup.contains(&w(&[1, 0])));
        assert!(o.is_elementary(2));
        let fixed = gm.orbit_of(&w(&[0])).unwrap();
        assert_eq!(fixed.cylinder_support(2), [w(&[0, 0])].into_iter().collect());
    }

    #[test]
    fn recode_identity_at_k1() {
        let gm = golden_mean();
        let rec = gm.higher_block_recode(1).unwrap();
        assert_eq!(rec.recoded().transitions(), gm.transitions());
    }

    #[test]
    fn recode_full_shift_k2() {
        let full = Sft::full_shift(2, rat(1, 2));
        let rec = full.higher_block_recode(2).unwrap();
        assert_eq!(rec.symbol_count(), 4);
        // ab -> cd allowed iff b = c.
        let cyl = rec.cylinders();
        for (i, u) in cyl.iter().enumerate() {
            for (j, v) in cyl.iter().enumerate() {
                let expect = u.symbols()[1] == v.symbols()[0];
                assert_eq!(rec.recoded().transitions()[i][j] == 1, expect);
            }
        }
    }

    #[test]
    fn recode_golden_k2_arcs() {
        let gm = golden_mean();
        let rec = gm.higher_block_recode(2).unwrap();
        let idx = |a, b| rec.cylinder_index(&w(&[a, b])).unwrap();
        let t = rec.recoded().transitions();
        let arcs: Vec<(usize, usize)> = (0..3)
            .flat_map(|i| (0..3).filter(move |&j| t[i][j] == 1).map(move |j| (i, j)))
            .collect();
        let expected = [
            (idx(0, 0), idx(0, 0)),
            (idx(0, 0), idx(0, 1)),
            (idx(0, 1), idx(1, 0)),
            (idx(1, 0), idx(0, 0)),
            (idx(1, 0), idx(0, 1)),
        ];
        assert_eq!(arcs.len(), 5);
        for e in expected {
            assert!(arcs.contains(&e));
        }
    }

    #[test]
    fn entropy_enclosures_nest_under_intersection() {
        let gm = golden_mean();
        let mut prev: Option<Enclosure> = None;
        for n in [10u32, 20, 30] {
            let e = gm.topological_entropy(n).unwrap();
            assert!(e.width() <= crate::num::rat_pow2(-(n as i64)));
            if let Some(p) = &prev {
                let inter = e.intersect(p).expect("successive enclosures must overlap");
                assert!(p.contains(&inter));
            }
            prev = Some(e);
        }
    }

    #[test]
    fn recode_preserves_periodic_orbits() {
        let gm = golden_mean();
        let rec = gm.higher_block_recode(2).unwrap();
        let o = gm.orbit_of(&w(&[0, 0, 1])).unwrap();
        let pushed = rec.push_orbit(&o).unwrap();
        assert_eq!(pushed.period(), 3);
        assert!(pushed.is_elementary(1));
        assert_eq!(rec.pull_orbit(&pushed), o);
    }
}
