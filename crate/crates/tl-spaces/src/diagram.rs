//! Planar diagram calculus for the Temperley-Lieb monoid at loop weight 1:
//! non-crossing perfect matchings on n top and n bottom points, composed by
//! stacking and tracing, with closed loops absorbed (and counted for
//! diagnostics only).

use std::collections::HashMap;
use std::sync::OnceLock;

use crate::error::{Result, TlError};

/// A boundary point, 1-based on each edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Point {
    Top(usize),
    Bottom(usize),
}

impl Point {
    fn rank(&self, n: usize) -> usize {
        match *self {
            Point::Top(i) => i - 1,
            Point::Bottom(j) => n + j - 1,
        }
    }

    fn from_rank(r: usize, n: usize) -> Point {
        if r < n {
            Point::Top(r + 1)
        } else {
            Point::Bottom(r - n + 1)
        }
    }
}

impl std::fmt::Display for Point {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Point::Top(i) => write!(f, "t{i}"),
            Point::Bottom(j) => write!(f, "b{j}"),
        }
    }
}

/// A Temperley-Lieb diagram on n strands. Equality and hashing ignore the
/// loop count: at loop weight 1 closed loops are scalar-trivial, and the
/// count is kept only as a diagnostic of the composition that produced the
/// diagram.
#[derive(Clone, Debug)]
pub struct Diagram {
    n: usize,
    /// Involution on 2n points: 0..n are top 1..n, n..2n are bottom 1..n.
    pairing: Vec<usize>,
    loops: usize,
}

impl PartialEq for Diagram {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.pairing == other.pairing
    }
}

impl Eq for Diagram {}

impl std::hash::Hash for Diagram {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.n.hash(state);
        self.pairing.hash(state);
    }
}

impl std::fmt::Display for Diagram {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self
            .pairs()
            .iter()
            .map(|(a, b)| format!("{a}-{b}"))
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

impl Diagram {
    /// The identity: top i matched to bottom i.
    pub fn identity(n: usize) -> Result<Diagram> {
        if n == 0 {
            return Err(TlError::ZeroStrands);
        }
        let pairing = (0..2 * n).map(|r| (r + n) % (2 * n)).collect();
        Ok(Diagram { n, pairing, loops: 0 })
    }

    /// The generator u_i: cups (i, i+1) on both boundaries, all other strands
    /// through.
    pub fn generator(n: usize, i: usize) -> Result<Diagram> {
        if n == 0 {
            return Err(TlError::ZeroStrands);
        }
        if i < 1 || i > n - 1 {
            return Err(TlError::BadGenerator { index: i, max: n.saturating_sub(1) });
        }
        let mut d = Diagram::identity(n)?;
        let (a, b) = (i - 1, i); // top ranks
        d.pairing[a] = b;
        d.pairing[b] = a;
        d.pairing[n + a] = n + b;
        d.pairing[n + b] = n + a;
        Ok(d)
    }

    /// Build from an explicit pair list; validates matching and planarity.
    pub fn from_pairs(n: usize, pairs: &[(Point, Point)]) -> Result<Diagram> {
        if n == 0 {
            return Err(TlError::ZeroStrands);
        }
        if pairs.len() != n {
            return Err(TlError::InvalidPairing(format!(
                "expected {n} pairs, got {}",
                pairs.len()
            )));
        }
        let mut pairing = vec![usize::MAX; 2 * n];
        let in_range = |p: &Point| match *p {
            Point::Top(i) | Point::Bottom(i) => i >= 1 && i <= n,
        };
        for (a, b) in pairs {
            if !in_range(a) || !in_range(b) {
                return Err(TlError::InvalidPairing(format!("point out of range in ({a}, {b})")));
            }
            let (ra, rb) = (a.rank(n), b.rank(n));
            if ra == rb {
                return Err(TlError::InvalidPairing(format!("{a} matched to itself")));
            }
            if pairing[ra] != usize::MAX || pairing[rb] != usize::MAX {
                return Err(TlError::InvalidPairing(format!("point repeated in ({a}, {b})")));
            }
            pairing[ra] = rb;
            pairing[rb] = ra;
        }
        if pairing.iter().any(|&p| p == usize::MAX) {
            return Err(TlError::InvalidPairing("some point unmatched".into()));
        }
        let d = Diagram { n, pairing, loops: 0 };
        if !d.is_planar() {
            return Err(TlError::NotPlanar);
        }
        Ok(d)
    }

    pub(crate) fn from_involution(n: usize, pairing: Vec<usize>, loops: usize) -> Diagram {
        Diagram { n, pairing, loops }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn loop_count(&self) -> usize {
        self.loops
    }

    /// Forget the diagnostic loop count.
    pub fn without_loops(&self) -> Diagram {
        Diagram { n: self.n, pairing: self.pairing.clone(), loops: 0 }
    }

    pub fn partner(&self, p: Point) -> Point {
        Point::from_rank(self.pairing[p.rank(self.n)], self.n)
    }

    pub(crate) fn pairing(&self) -> &[usize] {
        &self.pairing
    }

    /// Canonical form: the lexicographically sorted pair list.
    pub fn pairs(&self) -> Vec<(Point, Point)> {
        let n = self.n;
        let mut out = Vec::with_capacity(n);
        for r in 0..2 * n {
            let q = self.pairing[r];
            if q > r {
                out.push((Point::from_rank(r, n), Point::from_rank(q, n)));
            }
        }
        out
    }

    /// Number of cups on the top boundary (equals the number on the bottom).
    pub fn top_cups(&self) -> usize {
        (0..self.n).filter(|&r| self.pairing[r] < self.n && self.pairing[r] > r).count()
    }

    /// Validates the full invariant set: involution without fixed points and
    /// planarity in the cyclic boundary order.
    pub fn validate(&self) -> Result<()> {
        if self.pairing.len() != 2 * self.n {
            return Err(TlError::InvalidPairing("wrong pairing length".into()));
        }
        for (r, &q) in self.pairing.iter().enumerate() {
            if q >= 2 * self.n || q == r || self.pairing[q] != r {
                return Err(TlError::InvalidPairing(format!("not an involution at {r}")));
            }
        }
        if !self.is_planar() {
            return Err(TlError::NotPlanar);
        }
        Ok(())
    }

    /// Planarity in the cyclic order top1..topn, bottomn..bottom1, via the
    /// balanced-parenthesis criterion.
    fn is_planar(&self) -> bool {
        let n = self.n;
        let cyc = |r: usize| if r < n { r } else { 2 * n - 1 - (r - n) };
        let mut stack: Vec<usize> = Vec::new();
        // Position -> its partner's cyclic position.
        let mut partner = vec![0usize; 2 * n];
        for r in 0..2 * n {
            partner[cyc(r)] = cyc(self.pairing[r]);
        }
        for pos in 0..2 * n {
            let q = partner[pos];
            if q > pos {
                stack.push(pos);
            } else if stack.pop() != Some(q) {
                return false;
            }
        }
        true
    }

    /// Stack `self` above `other` and trace connectivity through the middle
    /// boundary; closed loops are absorbed and counted.
    pub fn compose(&self, other: &Diagram) -> Result<Diagram> {
        if self.n != other.n {
            return Err(TlError::StrandMismatch(self.n, other.n));
        }
        let n = self.n;
        let mut pairing = vec![usize::MAX; 2 * n];
        let mut seen_mid = vec![false; n];

        // Walk from an outer boundary point to its destination. Layer A is
        // `self` (owns the result top), layer B is `other` (owns the bottom).
        let walk = |start: usize, seen: &mut [bool]| -> usize {
            let (mut in_a, mut pt) = if start < n {
                (true, start)
            } else {
                (false, start - n + n) // bottom point of B, rank n..2n
            };
            loop {
                if in_a {
                    let q = self.pairing[pt];
                    if q < n {
                        return q; // result top point
                    }
                    let mid = q - n;
                    seen[mid] = true;
                    in_a = false;
                    pt = mid; // enter B at its top point `mid`
                } else {
                    let q = other.pairing[pt];
                    if q >= n {
                        return n + (q - n); // result bottom point
                    }
                    seen[q] = true;
                    in_a = true;
                    pt = n + q; // enter A at its bottom point `q`
                }
            }
        };

        for start in 0..2 * n {
            if pairing[start] != usize::MAX {
                continue;
            }
            let end = walk(start, &mut seen_mid);
            pairing[start] = end;
            pairing[end] = start;
        }

        // Untouched middle points belong to closed loops.
        let mut new_loops = 0;
        let mut visited = seen_mid;
        for m0 in 0..n {
            if visited[m0] {
                continue;
            }
            new_loops += 1;
            let mut m = m0;
            loop {
                visited[m] = true;
                // Across A from bottom m, landing on another bottom point.
                let qa = self.pairing[n + m] - n;
                visited[qa] = true;
                // Across B from top qa.
                let qb = other.pairing[qa];
                if qb == m0 {
                    break;
                }
                m = qb;
            }
        }

        Ok(Diagram {
            n,
            pairing,
            loops: self.loops + other.loops + new_loops,
        })
    }

    /// Embed into TL_m (m >= n) by appending through strands.
    pub fn pad(&self, m: usize) -> Result<Diagram> {
        if m < self.n {
            return Err(TlError::BadInclusion { from: self.n, target: m });
        }
        let n = self.n;
        let remap = |r: usize| if r < n { r } else { r - n + m };
        let mut pairing = vec![usize::MAX; 2 * m];
        for r in 0..2 * n {
            pairing[remap(r)] = remap(self.pairing[r]);
        }
        for i in n..m {
            pairing[i] = m + i;
            pairing[m + i] = i;
        }
        Ok(Diagram { n: m, pairing, loops: self.loops })
    }

    /// Plain-text strand picture for the CLI.
    pub fn ascii_art(&self) -> String {
        render_ascii(self)
    }
}

/// A word in the generators u_1..u_{n-1}.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Word {
    n: usize,
    letters: Vec<usize>,
}

impl Word {
    pub fn new(n: usize, letters: Vec<usize>) -> Result<Word> {
        if n == 0 {
            return Err(TlError::ZeroStrands);
        }
        for &l in &letters {
            if l < 1 || l > n - 1 {
                return Err(TlError::BadGenerator { index: l, max: n - 1 });
            }
        }
        Ok(Word { n, letters })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn letters(&self) -> &[usize] {
        &self.letters
    }
}

/// Left-to-right product of the generators named by the word; the empty word
/// gives the identity.
pub fn eval_word(w: &Word) -> Diagram {
    let mut acc = Diagram::identity(w.n).expect("word n >= 1");
    for &i in &w.letters {
        let g = Diagram::generator(w.n, i).expect("validated letter");
        acc = acc.compose(&g).expect("same n");
    }
    acc
}

static MAX_N: OnceLock<usize> = OnceLock::new();

/// Cap for Catalan-sized enumerations; TL_MAX_N overrides the default of 8.
pub fn max_catalan_n() -> usize {
    *MAX_N.get_or_init(|| {
        std::env::var("TL_MAX_N")
            .ok()
            .and_then(|s| s.parse().ok())
            .unwrap_or(8)
    })
}

/// All distinct TL_n diagrams in canonical order; the count is Catalan(n).
pub fn enumerate_diagrams(n: usize) -> Result<Vec<Diagram>> {
    Ok(monoid_table(n)?.diagrams)
}

/// The full monoid together with one generator word per diagram, computed by
/// breadth-first closure under right multiplication.
pub struct MonoidTable {
    pub n: usize,
    /// Canonical (sorted) order.
    pub diagrams: Vec<Diagram>,
    /// words[i] evaluates to diagrams[i].
    pub words: Vec<Word>,
    index: HashMap<Vec<usize>, usize>,
}

impl MonoidTable {
    pub fn index_of(&self, d: &Diagram) -> Option<usize> {
        self.index.get(d.pairing()).copied()
    }

    pub fn word_for(&self, d: &Diagram) -> Option<&Word> {
        self.index_of(d).map(|i| &self.words[i])
    }

    pub fn len(&self) -> usize {
        self.diagrams.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diagrams.is_empty()
    }
}

pub fn monoid_table(n: usize) -> Result<MonoidTable> {
    if n == 0 {
        return Err(TlError::ZeroStrands);
    }
    let cap = max_catalan_n();
    if n > cap {
        return Err(TlError::ResourceLimit { n, cap });
    }
    let gens: Vec<Diagram> = (1..n)
        .map(|i| Diagram::generator(n, i))
        .collect::<Result<_>>()?;
    let id = Diagram::identity(n)?;
    let mut found: HashMap<Vec<usize>, Vec<usize>> = HashMap::new();
    found.insert(id.pairing().to_vec(), Vec::new());
    let mut queue = vec![(id, Vec::new())];
    while let Some((d, word)) = queue.pop() {
        for (gi, g) in gens.iter().enumerate() {
            let next = d.compose(g)?.without_loops();
            if !found.contains_key(next.pairing()) {
                let mut w = word.clone();
                w.push(gi + 1);
                found.insert(next.pairing().to_vec(), w.clone());
                queue.push((next, w));
            }
        }
    }
    let mut entries: Vec<(Diagram, Vec<usize>)> = found
        .into_iter()
        .map(|(pairing, w)| (Diagram::from_involution(n, pairing, 0), w))
        .collect();
    entries.sort_by(|a, b| a.0.pairs().cmp(&b.0.pairs()));
    let mut index = HashMap::new();
    let mut diagrams = Vec::with_capacity(entries.len());
    let mut words = Vec::with_capacity(entries.len());
    for (i, (d, w)) in entries.into_iter().enumerate() {
        index.insert(d.pairing().to_vec(), i);
        words.push(Word::new(n, w)?);
        diagrams.push(d);
    }
    Ok(MonoidTable { n, diagrams, words, index })
}

fn render_ascii(d: &Diagram) -> String {
    let n = d.n;
    let col = |i: usize| 3 * i; // zero-based strand index
    let width = col(n - 1) + 1;

    // Classify strands.
    let mut top_cups: Vec<(usize, usize)> = Vec::new(); // zero-based (a < b)
    let mut bot_cups: Vec<(usize, usize)> = Vec::new();
    let mut throughs: Vec<(usize, usize)> = Vec::new(); // (top, bottom) zero-based
    for r in 0..n {
        let q = d.pairing[r];
        if q < n {
            if q > r {
                top_cups.push((r, q));
            }
        } else {
            throughs.push((r, q - n));
        }
    }
    for r in n..2 * n {
        let q = d.pairing[r];
        if q >= n && q > r {
            bot_cups.push((r - n, q - n));
        }
    }

    let nesting = |cups: &[(usize, usize)], c: (usize, usize)| {
        cups.iter()
            .filter(|&&(a, b)| a < c.0 && c.1 < b)
            .count()
    };
    let top_depth = top_cups.iter().map(|&c| nesting(&top_cups, c)).max();
    let bot_depth = bot_cups.iter().map(|&c| nesting(&bot_cups, c)).max();
    let top_rows = top_depth.map_or(0, |d| d + 1);
    let bot_rows = bot_depth.map_or(0, |d| d + 1);

    // Bent through strands each get a middle row; rightward bends stack with
    // the rightmost highest, leftward bends with the leftmost highest, which
    // keeps order-preserving planar strands from colliding.
    let mut bent: Vec<(usize, usize)> = throughs.iter().copied().filter(|&(i, j)| i != j).collect();
    bent.sort_by_key(|&(i, j)| if j > i { (0, n - i) } else { (1, i) });
    let mid_rows = if bent.is_empty() {
        usize::from(!throughs.is_empty())
    } else {
        bent.len()
    };

    let rows = 1 + top_rows + mid_rows + bot_rows + 1;
    let mut grid = vec![vec![' '; width]; rows];

    // Index rows.
    for i in 0..n {
        let label = ((i + 1) % 10).to_string().chars().next().unwrap();
        grid[0][col(i)] = label;
        grid[rows - 1][col(i)] = label;
    }

    let top_base = 1;
    let mid_base = top_base + top_rows;
    let bot_base = mid_base + mid_rows;

    for &(a, b) in &top_cups {
        let depth = nesting(&top_cups, (a, b));
        let row = top_base + (top_rows - 1 - depth);
        for r in top_base..row {
            grid[r][col(a)] = '|';
            grid[r][col(b)] = '|';
        }
        grid[row][col(a)] = '+';
        grid[row][col(b)] = '+';
        for c in col(a) + 1..col(b) {
            grid[row][c] = '-';
        }
    }
    for &(a, b) in &bot_cups {
        let depth = nesting(&bot_cups, (a, b));
        let row = bot_base + depth;
        grid[row][col(a)] = '+';
        grid[row][col(b)] = '+';
        for c in col(a) + 1..col(b) {
            grid[row][c] = '-';
        }
        for r in row + 1..bot_base + bot_rows {
            grid[r][col(a)] = '|';
            grid[r][col(b)] = '|';
        }
    }
    for &(i, j) in &throughs {
        for r in top_base..mid_base {
            grid[r][col(i)] = '|';
        }
        for r in mid_base..bot_base + bot_rows {
            if i == j {
                grid[r][col(i)] = '|';
            }
        }
    }
    for (k, &(i, j)) in bent.iter().enumerate() {
        let row = mid_base + k;
        for r in mid_base..row {
            grid[r][col(i)] = '|';
        }
        grid[row][col(i)] = '+';
        grid[row][col(j)] = '+';
        let (lo, hi) = (col(i).min(col(j)), col(i).max(col(j)));
        for c in lo + 1..hi {
            grid[row][c] = '-';
        }
        for r in row + 1..bot_base + bot_rows {
            grid[r][col(j)] = '|';
        }
    }

    grid.into_iter()
        .map(|row| row.into_iter().collect::<String>().trim_end().to_string())
        .collect::<Vec<_>>()
        .join("\n")
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    const CATALAN: [usize; 11] = [1, 1, 2, 5, 14, 42, 132, 429, 1430, 4862, 16796];

    fn gen(n: usize, i: usize) -> Diagram {
        Diagram::generator(n, i).unwrap()
    }

    fn word(n: usize, letters: &[usize]) -> Word {
        Word::new(n, letters.to_vec()).unwrap()
    }

    /// Oracle: enumerate non-crossing perfect matchings on 2n points in the
    /// cyclic boundary order directly, with no reference to the monoid.
    fn noncrossing_matchings(m: usize) -> Vec<Vec<(usize, usize)>> {
        // Matchings on positions 0..m (m even), non-crossing in linear order,
        // which equals cyclic non-crossing for a full matching.
        fn go(positions: &[usize]) -> Vec<Vec<(usize, usize)>> {
            if positions.is_empty() {
                return vec![vec![]];
            }
            let first = positions[0];
            let mut out = Vec::new();
            for k in (1..positions.len()).step_by(2) {
                let partner = positions[k];
                let inside: Vec<usize> = positions[1..k].to_vec();
                let outside: Vec<usize> = positions[k + 1..].to_vec();
                for left in go(&inside) {
                    for right in go(&outside) {
                        let mut matching = vec![(first, partner)];
                        matching.extend(left.iter().copied());
                        matching.extend(right.iter().copied());
                        out.push(matching);
                    }
                }
            }
            out
        }
        go(&(0..m).collect::<Vec<_>>())
    }

    /// Convert an oracle matching on cyclic positions to a Diagram.
    fn diagram_from_cyclic(n: usize, matching: &[(usize, usize)]) -> Option<Diagram> {
        let point = |pos: usize| {
            if pos < n {
                Point::Top(pos + 1)
            } else {
                Point::Bottom(2 * n - pos)
            }
        };
        let pairs: Vec<(Point, Point)> = matching.iter().map(|&(a, b)| (point(a), point(b))).collect();
        Diagram::from_pairs(n, &pairs).ok()
    }

    #[test]
    fn identity_and_generator_shapes() {
        let id = Diagram::identity(3).unwrap();
        assert_eq!(
            id.pairs(),
            vec![
                (Point::Top(1), Point::Bottom(1)),
                (Point::Top(2), Point::Bottom(2)),
                (Point::Top(3), Point::Bottom(3)),
            ]
        );
        assert_eq!(Diagram::identity(1).unwrap().pairs(), vec![(Point::Top(1), Point::Bottom(1))]);
        assert_eq!(Diagram::identity(4).unwrap().top_cups(), 0);

        let u1 = gen(3, 1);
        assert_eq!(
            u1.pairs(),
            vec![
                (Point::Top(1), Point::Top(2)),
                (Point::Top(3), Point::Bottom(3)),
                (Point::Bottom(1), Point::Bottom(2)),
            ]
        );
        assert!(Diagram::identity(0).is_err());
        assert!(Diagram::generator(3, 0).is_err());
        assert!(Diagram::generator(3, 3).is_err());
    }

    #[test]
    fn unit_laws() {
        let id = Diagram::identity(3).unwrap();
        let u2 = gen(3, 2);
        assert_eq!(id.compose(&u2).unwrap(), u2);
        assert_eq!(u2.compose(&id).unwrap(), u2);
        let u1 = gen(3, 1);
        assert_eq!(u1.compose(&id).unwrap(), u1);
    }

    #[test]
    fn idempotent_relation_counts_a_loop() {
        let u1 = gen(3, 1);
        let sq = u1.compose(&u1).unwrap();
        assert_eq!(sq, u1);
        assert_eq!(sq.loop_count(), 1);
    }

    #[test]
    fn neighbor_relation() {
        let u1 = gen(3, 1);
        let u2 = gen(3, 2);
        let prod = u1.compose(&u2).unwrap().compose(&u1).unwrap();
        assert_eq!(prod, u1);
        assert_eq!(eval_word(&word(3, &[1, 2, 1])), u1);
        assert_eq!(eval_word(&word(3, &[2, 1, 2])), gen(3, 2));
    }

    #[test]
    fn long_distance_relation() {
        let u1 = gen(4, 1);
        let u3 = gen(4, 3);
        assert_eq!(u1.compose(&u3).unwrap(), u3.compose(&u1).unwrap());
        assert_eq!(eval_word(&word(4, &[1, 3])), eval_word(&word(4, &[3, 1])));
    }

    #[test]
    fn hand_traced_composition() {
        // u_1 u_2 in TL_3: {t1-t2, b2-b3, t3-b1}, no loops.
        let got = gen(3, 1).compose(&gen(3, 2)).unwrap();
        let want = Diagram::from_pairs(
            3,
            &[
                (Point::Top(1), Point::Top(2)),
                (Point::Bottom(2), Point::Bottom(3)),
                (Point::Top(3), Point::Bottom(1)),
            ],
        )
        .unwrap();
        assert_eq!(got, want);
        assert_eq!(got.loop_count(), 0);
    }

    #[test]
    fn empty_word_is_identity() {
        assert_eq!(eval_word(&word(3, &[])), Diagram::identity(3).unwrap());
        assert!(Word::new(3, vec![3]).is_err());
        assert!(Word::new(1, vec![]).is_ok());
    }

    #[test]
    fn enumeration_counts_match_catalan_and_oracle() {
        for n in 1..=6 {
            let listed = enumerate_diagrams(n).unwrap();
            assert_eq!(listed.len(), CATALAN[n], "n={n}");
            // Canonical order is strictly sorted.
            for w in listed.windows(2) {
                assert!(w[0].pairs() < w[1].pairs());
            }
            // Exactly the non-crossing perfect matchings in the cyclic order.
            let oracle: HashSet<Vec<(Point, Point)>> = noncrossing_matchings(2 * n)
                .iter()
                .map(|m| diagram_from_cyclic(n, m).expect("oracle matchings are planar").pairs())
                .collect();
            assert_eq!(oracle.len(), CATALAN[n]);
            let listed_set: HashSet<Vec<(Point, Point)>> =
                listed.iter().map(|d| d.pairs()).collect();
            assert_eq!(listed_set, oracle, "n={n}");
        }
        assert_eq!(enumerate_diagrams(1).unwrap().len(), 1);
    }

    #[test]
    fn enumeration_resource_guard() {
        assert!(matches!(
            enumerate_diagrams(max_catalan_n() + 1),
            Err(TlError::ResourceLimit { .. })
        ));
    }

    #[test]
    fn composition_closure() {
        for n in 2..=5 {
            let all = enumerate_diagrams(n).unwrap();
            let set: HashSet<Vec<usize>> =
                all.iter().map(|d| d.pairing().to_vec()).collect();
            for a in &all {
                for b in &all {
                    let c = a.compose(b).unwrap();
                    c.validate().unwrap();
                    assert!(set.contains(c.pairing()));
                }
            }
        }
    }

    #[test]
    fn associativity_with_loop_counts() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for n in 2..=6 {
            let all = enumerate_diagrams(n).unwrap();
            for _ in 0..300 {
                let pick = |rng: &mut rand_chacha::ChaCha8Rng| {
                    all[rng.gen_range(0..all.len())].clone()
                };
                let (a, b, c) = (pick(&mut rng), pick(&mut rng), pick(&mut rng));
                let left = a.compose(&b).unwrap().compose(&c).unwrap();
                let right = a.compose(&b.compose(&c).unwrap()).unwrap();
                assert_eq!(left, right);
                assert_eq!(left.loop_count(), right.loop_count());
            }
        }
    }

    #[test]
    fn words_for_every_diagram_evaluate_back() {
        for n in 2..=5 {
            let table = monoid_table(n).unwrap();
            for (d, w) in table.diagrams.iter().zip(&table.words) {
                assert_eq!(&eval_word(w), d);
            }
        }
    }

    #[test]
    fn presentation_relations_for_words() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for n in 2..=8 {
            for _ in 0..50 {
                let len = rng.gen_range(0..10);
                let letters: Vec<usize> = (0..len).map(|_| rng.gen_range(1..n)).collect();
                let base = eval_word(&word(n, &letters));
                for i in 1..n {
                    // Idempotent.
                    let mut w = letters.clone();
                    w.push(i);
                    let once = eval_word(&word(n, &w));
                    w.push(i);
                    assert_eq!(eval_word(&word(n, &w)), once);
                    // Neighbor.
                    if i + 1 < n {
                        let mut w = letters.clone();
                        w.extend([i, i + 1, i]);
                        let mut v = letters.clone();
                        v.push(i);
                        assert_eq!(eval_word(&word(n, &w)), eval_word(&word(n, &v)));
                    }
                    // Long distance.
                    for j in i + 2..n {
                        let mut w = letters.clone();
                        w.extend([i, j]);
                        let mut v = letters.clone();
                        v.extend([j, i]);
                        assert_eq!(eval_word(&word(n, &w)), eval_word(&word(n, &v)));
                    }
                }
                let _ = base;
            }
        }
    }

    #[test]
    fn padding_is_a_monoid_map() {
        let u1 = gen(3, 1);
        let u2 = gen(3, 2);
        let p = u1.compose(&u2).unwrap().pad(5).unwrap();
        let q = u1.pad(5).unwrap().compose(&u2.pad(5).unwrap()).unwrap();
        assert_eq!(p, q);
        assert_eq!(gen(3, 1).pad(5).unwrap(), gen(5, 1));
        assert!(gen(3, 1).pad(2).is_err());
    }

    #[test]
    fn from_pairs_validation() {
        // Crossing pairing rejected.
        let crossing = Diagram::from_pairs(
            2,
            &[
                (Point::Top(1), Point::Bottom(2)),
                (Point::Top(2), Point::Bottom(1)),
            ],
        );
        assert!(matches!(crossing, Err(TlError::NotPlanar)));
        // Self-match rejected.
        assert!(Diagram::from_pairs(1, &[(Point::Top(1), Point::Top(1))]).is_err());
        // Valid nested bottom cups accepted.
        let nested = Diagram::from_pairs(
            4,
            &[
                (Point::Top(1), Point::Top(2)),
                (Point::Top(3), Point::Top(4)),
                (Point::Bottom(1), Point::Bottom(4)),
                (Point::Bottom(2), Point::Bottom(3)),
            ],
        );
        assert!(nested.is_ok());
    }

    #[test]
    fn ascii_art_smoke() {
        let art = gen(3, 1).ascii_art();
        assert!(art.contains('+'));
        assert!(art.contains('-'));
        let art = gen(3, 1).compose(&gen(3, 2)).unwrap().ascii_art();
        assert!(art.lines().count() >= 4);
        let id = Diagram::identity(1).unwrap().ascii_art();
        assert!(id.contains('|'));
    }
}
