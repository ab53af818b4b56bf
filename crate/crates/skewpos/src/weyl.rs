//! The Weyl group of SO(2n) as signed permutations of [2n]: generators,
//! length, Bruhat order, the parabolic quotient by the first n-1 generators,
//! fixed reduced words for the longest element and its coset representative,
//! and distinguished subexpressions.

use std::fmt;

use crate::error::{Error, Result};

/// Element of the Weyl group W of SO(2n), stored as a permutation of [2n]
/// subject to sigma(n+i) = n + sigma(i) mod 2n and an even number of
/// i in [n] with sigma(i) > n.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SignedPerm {
    n: usize,
    /// image[k-1] = sigma(k), values in 1..=2n.
    image: Vec<usize>,
}

impl SignedPerm {
    pub fn identity(n: usize) -> Self {
        SignedPerm {
            n,
            image: (1..=2 * n).collect(),
        }
    }

    /// The generator s_i: for i < n the product (i, i+1)(n+i, n+i+1), and
    /// s_n = (n, 2n-1)(n-1, 2n).
    pub fn generator(n: usize, i: usize) -> Result<Self> {
        if i == 0 || i > n {
            return Err(Error::GeneratorRange { i, n });
        }
        let mut image: Vec<usize> = (1..=2 * n).collect();
        let mut swap = |a: usize, b: usize| {
            image.swap(a - 1, b - 1);
        };
        if i < n {
            swap(i, i + 1);
            swap(n + i, n + i + 1);
        } else {
            swap(n, 2 * n - 1);
            swap(n - 1, 2 * n);
        }
        Ok(SignedPerm { n, image })
    }

    /// Validates and wraps a full image on [2n].
    pub fn from_image(image: Vec<usize>) -> Result<Self> {
        let two_n = image.len();
        if two_n == 0 || two_n % 2 != 0 {
            return Err(Error::InvalidPermutation("image length must be 2n".into()));
        }
        let n = two_n / 2;
        let mut seen = vec![false; two_n];
        for &v in &image {
            if v == 0 || v > two_n || seen[v - 1] {
                return Err(Error::InvalidPermutation(format!(
                    "not a bijection of [{two_n}]"
                )));
            }
            seen[v - 1] = true;
        }
        for i in 1..=n {
            let expect = if image[i - 1] <= n {
                image[i - 1] + n
            } else {
                image[i - 1] - n
            };
            if image[n + i - 1] != expect {
                return Err(Error::InvalidPermutation(format!(
                    "congruence sigma(n+i) = n + sigma(i) mod 2n fails at i = {i}"
                )));
            }
        }
        let negatives = image[..n].iter().filter(|&&v| v > n).count();
        if negatives % 2 != 0 {
            return Err(Error::InvalidPermutation(
                "odd number of window values above n".into(),
            ));
        }
        Ok(SignedPerm { n, image })
    }

    /// Reconstructs an element from its window w(1)..w(n); positions
    /// n+1..2n follow from the defining congruence.
    pub fn from_window(n: usize, window: &[usize]) -> Result<Self> {
        if window.len() != n {
            return Err(Error::InvalidPermutation(format!(
                "window length {} != n = {n}",
                window.len()
            )));
        }
        let mut image = vec![0usize; 2 * n];
        for (idx, &v) in window.iter().enumerate() {
            if v == 0 || v > 2 * n {
                return Err(Error::InvalidPermutation(format!(
                    "window value {v} out of 1..={}",
                    2 * n
                )));
            }
            image[idx] = v;
            image[n + idx] = if v <= n { v + n } else { v - n };
        }
        Self::from_image(image)
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn apply(&self, k: usize) -> usize {
        self.image[k - 1]
    }

    /// Function composition: (self.compose(other))(k) = self(other(k)).
    /// A word s_{i_1} ... s_{i_p} multiplies out with the rightmost letter
    /// applied first.
    pub fn compose(&self, other: &SignedPerm) -> SignedPerm {
        debug_assert_eq!(self.n, other.n);
        SignedPerm {
            n: self.n,
            image: (1..=2 * self.n).map(|k| self.apply(other.apply(k))).collect(),
        }
    }

    pub fn inverse(&self) -> SignedPerm {
        let mut image = vec![0usize; 2 * self.n];
        for (k, &v) in self.image.iter().enumerate() {
            image[v - 1] = k + 1;
        }
        SignedPerm { n: self.n, image }
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(k, &v)| v == k + 1)
    }

    /// The window w(1)..w(n).
    pub fn window(&self) -> Vec<usize> {
        self.image[..self.n].to_vec()
    }

    /// Window with values above n mapped to -(v - n).
    pub fn signed_window(&self) -> Vec<i64> {
        self.window()
            .into_iter()
            .map(|v| {
                if v <= self.n {
                    v as i64
                } else {
                    -((v - self.n) as i64)
                }
            })
            .collect()
    }

    /// Coxeter length, counted as the number of positive roots e_i - e_j,
    /// e_i + e_j (i < j) sent to negative roots by the signed window.
    pub fn length(&self) -> usize {
        let w = self.signed_window();
        let n = self.n;
        let mut len = 0usize;
        for i in 0..n {
            for j in i + 1..n {
                let (a, b) = (w[i], w[j]);
                if a > 0 && b > 0 {
                    if a > b {
                        len += 1;
                    }
                } else if a < 0 && b < 0 {
                    len += 1;
                    if a > b {
                        len += 1;
                    }
                } else if a > 0 && b < 0 {
                    if a + b > 0 {
                        len += 1;
                    }
                } else {
                    len += 1;
                    if a + b > 0 {
                        len += 1;
                    }
                }
            }
        }
        len
    }

    /// I_w = {i in [n] : w(i) > n}; always of even size.
    pub fn subset_of(&self) -> Vec<usize> {
        (1..=self.n).filter(|&i| self.apply(i) > self.n).collect()
    }

    /// True when right-multiplying by s_i shortens the element.
    fn has_right_descent(&self, i: usize) -> bool {
        let s = SignedPerm::generator(self.n, i).expect("valid generator");
        self.compose(&s).length() < self.length()
    }

    /// Some reduced word for the element.
    pub fn reduced_word(&self) -> Word {
        let n = self.n;
        let mut w = self.clone();
        let mut rev = Vec::new();
        while !w.is_identity() {
            let i = (1..=n)
                .find(|&i| w.has_right_descent(i))
                .expect("non-identity element has a right descent");
            w = w.compose(&SignedPerm::generator(n, i).expect("valid generator"));
            rev.push(i);
        }
        rev.reverse();
        Word { letters: rev }
    }

    pub fn window_string(&self) -> String {
        window_to_string(&self.window())
    }
}

impl fmt::Display for SignedPerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.window_string())
    }
}

/// Prints a window: digits concatenated when all values are single-digit,
/// comma-separated otherwise.
pub fn window_to_string(window: &[usize]) -> String {
    if window.iter().all(|&v| v <= 9) {
        window.iter().map(|v| v.to_string()).collect()
    } else {
        window
            .iter()
            .map(|v| v.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }
}

/// Parses a window in the printed form: digits, or comma/space separated.
pub fn parse_window(s: &str) -> Result<Vec<usize>> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::Parse("empty window".into()));
    }
    if s.contains(',') || s.contains(char::is_whitespace) {
        s.split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad window value {t:?}")))
            })
            .collect()
    } else {
        s.chars()
            .map(|c| {
                c.to_digit(10)
                    .map(|d| d as usize)
                    .ok_or_else(|| Error::Parse(format!("bad window digit {c:?}")))
            })
            .collect()
    }
}

/// Word in the generators, letters in 1..=n.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Word {
    pub letters: Vec<usize>,
}

impl Word {
    pub fn new(letters: Vec<usize>) -> Self {
        Word { letters }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn product(&self, n: usize) -> Result<SignedPerm> {
        let mut acc = SignedPerm::identity(n);
        for &i in &self.letters {
            acc = acc.compose(&SignedPerm::generator(n, i)?);
        }
        Ok(acc)
    }
}

/// The fixed reduced word for the minimal coset representative of the
/// longest element: s_n-blocks with two descending runs each.
pub fn w0_coset_word(n: usize) -> Word {
    let mut letters = Vec::new();
    // One block per s_n; the trailing runs empty out on their own for the
    // last block when n is even.
    let m_max = n / 2;
    for m in 1..=m_max {
        letters.push(n);
        if n >= 2 {
            for l in (2 * m - 1..=n.saturating_sub(2)).rev() {
                letters.push(l);
            }
            for l in (2 * m..=n - 1).rev() {
                letters.push(l);
            }
        }
    }
    debug_assert_eq!(letters.len(), n * (n - 1) / 2);
    Word { letters }
}

/// Reduced word for the longest element: the longest element of the type-A
/// parabolic followed by `w0_coset_word`.
pub fn w0_word(n: usize) -> Word {
    let mut letters = Vec::new();
    for k in 1..n {
        for l in (1..=k).rev() {
            letters.push(l);
        }
    }
    letters.extend(w0_coset_word(n).letters);
    Word { letters }
}

/// Bruhat order by the subword property: peel right descents of `u` while
/// scanning a reduced word of `v` from the right.
pub fn bruhat_leq(u: &SignedPerm, v: &SignedPerm) -> bool {
    debug_assert_eq!(u.rank(), v.rank());
    if u.length() > v.length() {
        return false;
    }
    let n = u.rank();
    let word = v.reduced_word();
    let mut g = u.clone();
    for &i in word.letters.iter().rev() {
        let s = SignedPerm::generator(n, i).expect("valid generator");
        let h = g.compose(&s);
        if h.length() < g.length() {
            g = h;
        }
    }
    g.is_identity()
}

/// Subexpression of a fixed word: mask[k] selects the k-th letter.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Subexpression {
    pub base: Word,
    pub mask: Vec<bool>,
}

impl Subexpression {
    pub fn new(base: Word, mask: Vec<bool>) -> Result<Self> {
        if base.len() != mask.len() {
            return Err(Error::Dimension("mask length must match word length".into()));
        }
        Ok(Subexpression { base, mask })
    }

    pub fn selected_count(&self) -> usize {
        self.mask.iter().filter(|&&b| b).count()
    }

    pub fn product(&self, n: usize) -> Result<SignedPerm> {
        let mut acc = SignedPerm::identity(n);
        for (k, &i) in self.base.letters.iter().enumerate() {
            if self.mask[k] {
                acc = acc.compose(&SignedPerm::generator(n, i)?);
            }
        }
        Ok(acc)
    }

    /// Word made of the selected letters.
    pub fn selected_word(&self) -> Word {
        Word {
            letters: self
                .base
                .letters
                .iter()
                .zip(&self.mask)
                .filter_map(|(&i, &b)| b.then_some(i))
                .collect(),
        }
    }

    /// Suffix products u_(k) for k = 0..=p: the product of the selected
    /// letters among the last k positions, in word order.
    fn suffix_products(&self, n: usize) -> Vec<SignedPerm> {
        let p = self.base.len();
        let mut out = vec![SignedPerm::identity(n)];
        let mut g = SignedPerm::identity(n);
        for k in 1..=p {
            let pos = p - k;
            if self.mask[pos] {
                let s = SignedPerm::generator(n, self.base.letters[pos]).expect("valid generator");
                g = s.compose(&g);
            }
            out.push(g.clone());
        }
        out
    }

    /// Partition of suffix indices 1..=p by whether u_(k) is longer than,
    /// equal to, or shorter than u_(k-1).
    pub fn j_sets(&self, n: usize) -> (Vec<usize>, Vec<usize>, Vec<usize>) {
        let chain = self.suffix_products(n);
        let (mut plus, mut circ, mut minus) = (Vec::new(), Vec::new(), Vec::new());
        for k in 1..chain.len() {
            let (prev, cur) = (chain[k - 1].length(), chain[k].length());
            match cur.cmp(&prev) {
                std::cmp::Ordering::Greater => plus.push(k),
                std::cmp::Ordering::Equal => circ.push(k),
                std::cmp::Ordering::Less => minus.push(k),
            }
        }
        (plus, circ, minus)
    }

    /// Re-verifies the definition position by position: for every suffix
    /// index j, u_(j) <= s_{i_{p-j+1}} u_(j-1), with all u_(j) computed from
    /// scratch. Used as an independent check on the search.
    pub fn is_distinguished(&self, n: usize) -> bool {
        let p = self.base.len();
        let chain = self.suffix_products(n);
        for j in 1..=p {
            let s = SignedPerm::generator(n, self.base.letters[p - j]).expect("valid generator");
            let bound = s.compose(&chain[j - 1]);
            if !bruhat_leq(&chain[j], &bound) {
                return false;
            }
        }
        true
    }

    pub fn is_reduced(&self, n: usize) -> bool {
        self.product(n)
            .map(|g| g.length() == self.selected_count())
            .unwrap_or(false)
    }
}

/// The unique reduced distinguished subexpression for `v` inside the reduced
/// word `base`. Found by right-to-left backtracking; positions where the next
/// letter would shorten the running suffix product are pruned (a reduced
/// distinguished mask has no shortening step), and branches that cannot
/// reach l(v) selected letters are cut.
pub fn distinguished_subexpr(v: &SignedPerm, base: &Word) -> Result<Subexpression> {
    let n = v.rank();
    let p = base.len();
    let target_len = v.length();
    let mut mask = vec![false; p];

    fn search(
        n: usize,
        letters: &[usize],
        k: usize,
        g: &SignedPerm,
        v: &SignedPerm,
        mask: &mut Vec<bool>,
    ) -> bool {
        if k == 0 {
            return g == v;
        }
        let len_g = g.length();
        if len_g > v.length() || len_g + (k) < v.length() || !bruhat_leq(g, v) {
            return false;
        }
        let s = SignedPerm::generator(n, letters[k - 1]).expect("valid generator");
        let h = s.compose(g);
        if h.length() < len_g {
            // The distinguished condition forces selection here, which would
            // make the subexpression non-reduced.
            return false;
        }
        mask[k - 1] = true;
        if search(n, letters, k - 1, &h, v, mask) {
            return true;
        }
        mask[k - 1] = false;
        search(n, letters, k - 1, g, v, mask)
    }

    let id = SignedPerm::identity(n);
    if search(n, &base.letters, p, &id, v, &mut mask) {
        let sub = Subexpression::new(base.clone(), mask)?;
        debug_assert!(sub.is_distinguished(n) && sub.is_reduced(n));
        debug_assert_eq!(sub.selected_count(), target_len);
        Ok(sub)
    } else {
        Err(Error::NotBruhatBelow {
            v: v.window_string(),
            w: base
                .product(n)
                .map(|w| w.window_string())
                .unwrap_or_default(),
        })
    }
}

/// The mask over `w0_coset_word(n)` whose product is the minimal coset
/// representative with window-positions I: the m-th s_n block contributes
/// its s_n and the run prefixes down to i_{2m-1} and i_{2m}.
pub fn coset_word_from_subset(n: usize, subset: &[usize]) -> Result<Subexpression> {
    if subset.len() % 2 != 0 {
        return Err(Error::InvalidPermutation(
            "subset must have even cardinality".into(),
        ));
    }
    if subset.windows(2).any(|p| p[0] >= p[1]) || subset.iter().any(|&i| i == 0 || i > n) {
        return Err(Error::IndexRange("subset must be increasing within [n]".into()));
    }
    let base = w0_coset_word(n);
    let mut mask = vec![false; base.len()];
    let pairs = subset.len() / 2;
    let mut pos = 0usize;
    let m_max = if n % 2 == 0 { n / 2 } else { (n - 1) / 2 };
    for m in 1..=m_max {
        // s_n head of block m.
        if m <= pairs {
            mask[pos] = true;
        }
        pos += 1;
        for l in (2 * m - 1..=n.saturating_sub(2)).rev() {
            if m <= pairs && l >= subset[2 * m - 2] {
                mask[pos] = true;
            }
            pos += 1;
        }
        for l in (2 * m..=n - 1).rev() {
            if m <= pairs && l >= subset[2 * m - 1] {
                mask[pos] = true;
            }
            pos += 1;
        }
    }
    debug_assert_eq!(pos, base.len());
    Subexpression::new(base, mask)
}

/// The unique minimal-length representative of the right coset of the
/// type-A parabolic containing `w`.
pub fn min_coset_rep(w: &SignedPerm) -> SignedPerm {
    let sub = coset_word_from_subset(w.rank(), &w.subset_of())
        .expect("subset_of yields an even increasing subset");
    sub.product(w.rank()).expect("valid letters")
}

/// All elements of W by breadth-first closure under the generators.
/// Exponential; intended for small ranks in tests and enumeration.
pub fn enumerate_group(n: usize, limit: usize) -> Result<Vec<SignedPerm>> {
    if n > limit {
        return Err(Error::GuardExceeded { n, limit });
    }
    let gens: Vec<SignedPerm> = (1..=n)
        .map(|i| SignedPerm::generator(n, i).expect("valid generator"))
        .collect();
    let mut seen = std::collections::HashSet::new();
    let mut queue = std::collections::VecDeque::new();
    let id = SignedPerm::identity(n);
    seen.insert(id.clone());
    queue.push_back(id);
    let mut out = Vec::new();
    while let Some(w) = queue.pop_front() {
        out.push(w.clone());
        for s in &gens {
            let next = w.compose(s);
            if seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    Ok(out)
}

/// The elements of the type-A parabolic generated by the first n-1
/// generators: exactly the elements fixing [n] setwise.
pub fn enumerate_parabolic(n: usize, limit: usize) -> Result<Vec<SignedPerm>> {
    Ok(enumerate_group(n, limit)?
        .into_iter()
        .filter(|w| w.subset_of().is_empty())
        .collect())
}
