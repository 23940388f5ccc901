use std::fmt;

/// Element of the symmetric group S_n in window notation, values `1..=n`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    window: Vec<usize>,
}

/// Element of the hyperoctahedral group B_n in window notation: `|π(i)|`
/// ranges over `1..=n`, signs are free.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedPermutation {
    window: Vec<i32>,
}

fn is_bijection(abs: impl Iterator<Item = usize>, n: usize) -> bool {
    let mut seen = vec![false; n + 1];
    for v in abs {
        if v == 0 || v > n || seen[v] {
            return false;
        }
        seen[v] = true;
    }
    true
}

/// Number of maximal monotone segments of a word with distinct letters;
/// a word with fewer than two letters has none.
pub(crate) fn alternating_runs(word: &[i64]) -> u32 {
    if word.len() < 2 {
        return 0;
    }
    let mut runs = 1;
    for i in 1..word.len() - 1 {
        let up_before = word[i - 1] < word[i];
        let up_after = word[i] < word[i + 1];
        if up_before != up_after {
            runs += 1;
        }
    }
    runs
}

impl Permutation {
    pub fn new(window: Vec<usize>) -> Option<Permutation> {
        let n = window.len();
        is_bijection(window.iter().copied(), n).then_some(Permutation { window })
    }

    pub fn identity(n: usize) -> Permutation {
        Permutation {
            window: (1..=n).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.window.len()
    }

    pub fn is_empty(&self) -> bool {
        self.window.is_empty()
    }

    pub fn window(&self) -> &[usize] {
        &self.window
    }

    /// π(i) for 1-based `i`.
    pub fn at(&self, i: usize) -> usize {
        self.window[i - 1]
    }

    pub fn excedances(&self) -> u32 {
        self.indexed().filter(|&(i, v)| v > i).count() as u32
    }

    /// #{i : π(i) <= i}
    pub fn anti_excedances(&self) -> u32 {
        self.indexed().filter(|&(i, v)| v <= i).count() as u32
    }

    pub fn fixed_points(&self) -> u32 {
        self.indexed().filter(|&(i, v)| v == i).count() as u32
    }

    /// Drops: #{i : π(i) < i}.
    pub fn drops(&self) -> u32 {
        self.indexed().filter(|&(i, v)| v < i).count() as u32
    }

    pub fn cycles(&self) -> u32 {
        count_cycles(self.window.len(), |i| self.window[i - 1])
    }

    /// Alternating runs of π(1)…π(n). A one-letter permutation has none.
    pub fn alternating_runs(&self) -> u32 {
        let word: Vec<i64> = self.window.iter().map(|&v| v as i64).collect();
        alternating_runs(&word)
    }

    /// Alternating runs of the word 0 π(1) … π(n).
    pub fn up_down_runs(&self) -> u32 {
        let word: Vec<i64> = std::iter::once(0)
            .chain(self.window.iter().map(|&v| v as i64))
            .collect();
        alternating_runs(&word)
    }

    /// #{i in [n-1] : π(i-1) < π(i) > π(i+1)} with π(0) = 0.
    pub fn left_peaks(&self) -> u32 {
        let w = &self.window;
        (1..w.len())
            .filter(|&i| {
                let prev = if i == 1 { 0 } else { w[i - 2] };
                prev < w[i - 1] && w[i - 1] > w[i]
            })
            .count() as u32
    }

    fn indexed(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.window.iter().enumerate().map(|(i, &v)| (i + 1, v))
    }
}

fn count_cycles(n: usize, next: impl Fn(usize) -> usize) -> u32 {
    let mut seen = vec![false; n + 1];
    let mut cycles = 0;
    for start in 1..=n {
        if seen[start] {
            continue;
        }
        cycles += 1;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = next(i);
        }
    }
    cycles
}

impl SignedPermutation {
    pub fn new(window: Vec<i32>) -> Option<SignedPermutation> {
        let n = window.len();
        is_bijection(window.iter().map(|v| v.unsigned_abs() as usize), n)
            .then_some(SignedPermutation { window })
    }

    pub fn len(&self) -> usize {
        self.window.len()
    }

    pub fn is_empty(&self) -> bool {
        self.window.is_empty()
    }

    pub fn window(&self) -> &[i32] {
        &self.window
    }

    /// π(i) for `0 <= i <= n`, with π(0) = 0.
    pub fn at(&self, i: usize) -> i32 {
        if i == 0 {
            0
        } else {
            self.window[i - 1]
        }
    }

    fn indexed(&self) -> impl Iterator<Item = (i32, i32)> + '_ {
        self.window
            .iter()
            .enumerate()
            .map(|(i, &v)| (i as i32 + 1, v))
    }

    /// Descents of 0 π(1) … π(n) at positions 0..n-1.
    pub fn descents(&self) -> u32 {
        (0..self.len())
            .filter(|&i| self.at(i) > self.at(i + 1))
            .count() as u32
    }

    pub fn ascents(&self) -> u32 {
        (0..self.len())
            .filter(|&i| self.at(i) < self.at(i + 1))
            .count() as u32
    }

    pub fn negatives(&self) -> u32 {
        self.window.iter().filter(|&&v| v < 0).count() as u32
    }

    pub fn positives(&self) -> u32 {
        self.window.iter().filter(|&&v| v > 0).count() as u32
    }

    pub fn fixed_points(&self) -> u32 {
        self.indexed().filter(|&(i, v)| v == i).count() as u32
    }

    pub fn is_up(&self) -> bool {
        self.window.first().is_none_or(|&v| v > 0)
    }

    /// Alternating runs of 0 π(1) … π(n) in the order … < -2 < -1 < 0 < 1 < 2 < ….
    pub fn runs(&self) -> u32 {
        let word: Vec<i64> = std::iter::once(0)
            .chain(self.window.iter().map(|&v| v as i64))
            .collect();
        alternating_runs(&word)
    }

    /// π(|π(i)|)
    fn twice(&self, v: i32) -> i32 {
        self.window[v.unsigned_abs() as usize - 1]
    }

    /// #{i : π(i) = i or π(|π(i)|) > π(i)}
    pub fn weak_excedances(&self) -> u32 {
        self.indexed()
            .filter(|&(i, v)| v == i || self.twice(v) > v)
            .count() as u32
    }

    /// #{i : π(|π(i)|) < π(i)}
    pub fn anti_excedances(&self) -> u32 {
        self.indexed().filter(|&(_, v)| self.twice(v) < v).count() as u32
    }

    /// #{i : π(i) = -i}, the one-element negative cycles.
    pub fn singletons(&self) -> u32 {
        self.indexed().filter(|&(i, v)| v == -i).count() as u32
    }

    /// Cycles of i ↦ |π(i)| on [n].
    pub fn cycles(&self) -> u32 {
        count_cycles(self.len(), |i| self.window[i - 1].unsigned_abs() as usize)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.window.iter().map(|v| v.to_string()).collect();
        write!(f, "[{}]", parts.join(" "))
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for SignedPermutation {
    /// Negative entries print with a leading `-`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.window.iter().map(|v| v.to_string()).collect();
        write!(f, "[{}]", parts.join(" "))
    }
}

impl fmt::Debug for SignedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycle_form_example() {
        // (1,3,4)(2)(5,6)
        let p = Permutation::new(vec![3, 2, 4, 1, 6, 5]).unwrap();
        assert_eq!(p.excedances(), 3);
        assert_eq!(p.anti_excedances(), 3);
        assert_eq!(p.cycles(), 3);
        assert_eq!(p.fixed_points(), 1);
        assert_eq!(p.drops(), 2);
    }

    #[test]
    fn signed_runs_example() {
        let p = SignedPermutation::new(vec![3, -1, 2, 4, -5]).unwrap();
        assert_eq!(p.runs(), 4);
        assert!(p.is_up());
    }

    #[test]
    fn weak_excedance_example() {
        let p = SignedPermutation::new(vec![-3, 5, 1, -7, 2, -6, -4]).unwrap();
        assert_eq!(p.weak_excedances(), 3);
        assert_eq!(p.anti_excedances(), 3);
        assert_eq!(p.singletons(), 1);
        assert_eq!(p.fixed_points(), 0);
        // (-6)(-7,-4)(-3,1)(2,5)
        assert_eq!(p.cycles(), 4);
    }

    #[test]
    fn type_b_descents_use_leading_zero() {
        let p = SignedPermutation::new(vec![-1]).unwrap();
        assert_eq!((p.descents(), p.ascents()), (1, 0));
        let p = SignedPermutation::new(vec![1]).unwrap();
        assert_eq!((p.descents(), p.ascents()), (0, 1));
    }

    #[test]
    fn runs_conventions() {
        assert_eq!(Permutation::identity(0).alternating_runs(), 0);
        assert_eq!(Permutation::identity(1).alternating_runs(), 0);
        assert_eq!(Permutation::identity(0).up_down_runs(), 0);
        assert_eq!(Permutation::identity(1).up_down_runs(), 1);
        let p = Permutation::new(vec![2, 1, 3]).unwrap();
        assert_eq!(p.alternating_runs(), 2);
        assert_eq!(p.up_down_runs(), 3);
        assert_eq!(p.left_peaks(), 1);
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(Permutation::new(vec![1, 1]).is_none());
        assert!(Permutation::new(vec![0, 1]).is_none());
        assert!(SignedPermutation::new(vec![1, -1]).is_none());
        assert!(SignedPermutation::new(vec![-2, -1]).is_some());
    }
}
