//! Link states: n boundary points carrying p non-crossing cups and n-2p
//! defects, with no defect under a cup. The Temperley-Lieb monoid acts on
//! them by gluing a state into a diagram and reading off the far boundary;
//! cup counts never decrease under the action.

use crate::diagram::{Diagram, Point};
use crate::error::{Result, TlError};

/// One boundary position of a link state: a loose strand or a cup end.
/// Ordering (Defect first, cups by partner) induces the canonical state order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Site {
    Defect,
    /// Partner position, 0-based.
    Cup(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinkState {
    sites: Vec<Site>,
}

impl LinkState {
    pub fn from_sites(sites: Vec<Site>) -> Result<LinkState> {
        let state = LinkState { sites };
        state.validate()?;
        Ok(state)
    }

    /// Convenience constructor from 1-based cup pairs; everything else is a
    /// defect.
    pub fn from_cups(n: usize, cups: &[(usize, usize)]) -> Result<LinkState> {
        let mut sites = vec![Site::Defect; n];
        for &(a, b) in cups {
            if a < 1 || b < 1 || a > n || b > n || a == b {
                return Err(TlError::InvalidState(format!("bad cup ({a},{b})")));
            }
            sites[a - 1] = Site::Cup(b - 1);
            sites[b - 1] = Site::Cup(a - 1);
        }
        LinkState::from_sites(sites)
    }

    pub fn all_defects(n: usize) -> Result<LinkState> {
        if n == 0 {
            return Err(TlError::ZeroStrands);
        }
        Ok(LinkState { sites: vec![Site::Defect; n] })
    }

    fn validate(&self) -> Result<()> {
        let n = self.sites.len();
        if n == 0 {
            return Err(TlError::ZeroStrands);
        }
        let mut stack: Vec<usize> = Vec::new();
        for (i, site) in self.sites.iter().enumerate() {
            match *site {
                Site::Defect => {
                    if !stack.is_empty() {
                        return Err(TlError::InvalidState(format!(
                            "defect at position {} lies under a cup",
                            i + 1
                        )));
                    }
                }
                Site::Cup(j) => {
                    if j >= n || j == i || self.sites[j] != Site::Cup(i) {
                        return Err(TlError::InvalidState(format!(
                            "cup partnering is not involutive at position {}",
                            i + 1
                        )));
                    }
                    if j > i {
                        stack.push(j);
                    } else if stack.pop() != Some(i) {
                        return Err(TlError::InvalidState(format!(
                            "cups cross near position {}",
                            i + 1
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.sites.len()
    }

    pub fn sites(&self) -> &[Site] {
        &self.sites
    }

    /// Number of cups p.
    pub fn cups(&self) -> usize {
        self.sites.iter().filter(|s| matches!(s, Site::Cup(_))).count() / 2
    }

    pub fn defect_positions(&self) -> Vec<usize> {
        self.sites
            .iter()
            .enumerate()
            .filter_map(|(i, s)| matches!(s, Site::Defect).then_some(i))
            .collect()
    }

    /// 0-based (open, close) cup pairs.
    pub fn cup_pairs(&self) -> Vec<(usize, usize)> {
        self.sites
            .iter()
            .enumerate()
            .filter_map(|(i, s)| match *s {
                Site::Cup(j) if j > i => Some((i, j)),
                _ => None,
            })
            .collect()
    }

    /// Pattern string: '(' and ')' for cup ends, '.' for defects.
    pub fn pattern(&self) -> String {
        self.sites
            .iter()
            .enumerate()
            .map(|(i, s)| match *s {
                Site::Defect => '.',
                Site::Cup(j) if j > i => '(',
                Site::Cup(_) => ')',
            })
            .collect()
    }
}

impl std::fmt::Display for LinkState {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.pattern())
    }
}

/// A link state or the absorbing Zero of a standard module.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum PointedState {
    Zero,
    State(LinkState),
}

/// All (n,p) link states in canonical order; the count is
/// d(n,p) = C(n,p) - C(n,p-1). p = 0 is allowed here for internal use even
/// though the monoid set M_n starts at p = 1.
pub fn enumerate_states(n: usize, p: usize) -> Result<Vec<LinkState>> {
    if n == 0 {
        return Err(TlError::ZeroStrands);
    }
    if 2 * p > n {
        return Err(TlError::BadCupCount { n, p });
    }
    let mut out = Vec::new();
    let mut sites: Vec<Site> = Vec::with_capacity(n);
    fn go(
        n: usize,
        p: usize,
        opened: usize,
        stack: &mut Vec<usize>,
        sites: &mut Vec<Site>,
        out: &mut Vec<LinkState>,
    ) {
        let i = sites.len();
        if i == n {
            if stack.is_empty() && opened == p {
                out.push(LinkState { sites: sites.clone() });
            }
            return;
        }
        // Defects only at nesting depth 0.
        if stack.is_empty() && n - i > 2 * (p - opened) {
            sites.push(Site::Defect);
            go(n, p, opened, stack, sites, out);
            sites.pop();
        }
        if opened < p {
            stack.push(i);
            sites.push(Site::Cup(usize::MAX)); // patched on close
            go(n, p, opened + 1, stack, sites, out);
            sites.pop();
            stack.pop();
        }
        if let Some(&open) = stack.last() {
            stack.pop();
            sites[open] = Site::Cup(i);
            sites.push(Site::Cup(open));
            go(n, p, opened, stack, sites, out);
            sites.pop();
            stack.push(open);
        }
    }
    go(n, p, 0, &mut Vec::new(), &mut sites, &mut out);
    out.sort();
    Ok(out)
}

/// The monoid set M_n: all link states with p >= 1 cups, ordered by cup count
/// then canonically.
pub fn all_link_states(n: usize) -> Result<Vec<LinkState>> {
    let mut out = Vec::new();
    for p in 1..=n / 2 {
        out.extend(enumerate_states(n, p)?);
    }
    Ok(out)
}

/// Left action of a diagram on a link state: the state is glued into the
/// boundary that meets the right factor in a product (so that
/// act(compose(a,b), v) = act(a, act(b, v))) and the result is read off the
/// opposite boundary. Closed loops are absorbed; pairs of defects captured by
/// a cup of the diagram merge, so the cup count never decreases.
pub fn act(a: &Diagram, v: &LinkState) -> Result<LinkState> {
    let n = a.n();
    if n != v.n() {
        return Err(TlError::StrandMismatch(n, v.n()));
    }
    let pairing = a.pairing();
    let mut sites: Vec<Option<Site>> = vec![None; n];
    for t in 0..n {
        if sites[t].is_some() {
            continue;
        }
        let mut cur = pairing[t];
        loop {
            if cur < n {
                sites[t] = Some(Site::Cup(cur));
                sites[cur] = Some(Site::Cup(t));
                break;
            }
            match v.sites[cur - n] {
                Site::Defect => {
                    sites[t] = Some(Site::Defect);
                    break;
                }
                Site::Cup(j) => cur = pairing[n + j],
            }
        }
    }
    let sites: Vec<Site> = sites.into_iter().map(|s| s.expect("walk fills every top point")).collect();
    let state = LinkState { sites };
    debug_assert!(state.validate().is_ok());
    Ok(state)
}

/// Action on the standard module V_{n,p}: a result with more than p cups is
/// sent to Zero, and Zero is absorbing.
pub fn act_standard(a: &Diagram, v: &PointedState, p: usize) -> Result<PointedState> {
    match v {
        PointedState::Zero => Ok(PointedState::Zero),
        PointedState::State(state) => {
            if state.cups() != p {
                return Err(TlError::CupCountMismatch { got: state.cups(), expected: p });
            }
            let moved = act(a, state)?;
            if moved.cups() > p {
                Ok(PointedState::Zero)
            } else {
                Ok(PointedState::State(moved))
            }
        }
    }
}

/// The strand-appending inclusion i_{m,n}: pad with defects on the right.
pub fn include(v: &LinkState, n_target: usize) -> Result<LinkState> {
    if n_target < v.n() {
        return Err(TlError::BadInclusion { from: v.n(), target: n_target });
    }
    let mut sites = v.sites.clone();
    sites.resize(n_target, Site::Defect);
    Ok(LinkState { sites })
}

/// The diagram v w*: v's pattern on top, w reflected on the bottom, defects
/// joined in order.
pub fn back_to_back(v: &LinkState, w: &LinkState) -> Result<Diagram> {
    if v.n() != w.n() {
        return Err(TlError::StrandMismatch(v.n(), w.n()));
    }
    if v.cups() != w.cups() {
        return Err(TlError::CupCountMismatch { got: w.cups(), expected: v.cups() });
    }
    let mut pairs: Vec<(Point, Point)> = Vec::with_capacity(v.n());
    for (a, b) in v.cup_pairs() {
        pairs.push((Point::Top(a + 1), Point::Top(b + 1)));
    }
    for (a, b) in w.cup_pairs() {
        pairs.push((Point::Bottom(a + 1), Point::Bottom(b + 1)));
    }
    for (dv, dw) in v.defect_positions().into_iter().zip(w.defect_positions()) {
        pairs.push((Point::Top(dv + 1), Point::Bottom(dw + 1)));
    }
    Diagram::from_pairs(v.n(), &pairs)
}

/// Bilinear-form support at loop weight 1: true when reflecting w under v
/// connects every defect of v to a defect of w (the form evaluates to 1),
/// false when some defect path turns back (the form evaluates to 0).
pub fn defects_pair_up(v: &LinkState, w: &LinkState) -> Result<bool> {
    if v.n() != w.n() {
        return Err(TlError::StrandMismatch(v.n(), w.n()));
    }
    for start in v.defect_positions() {
        let mut pos = start;
        let mut going_down = true;
        loop {
            if going_down {
                match w.sites[pos] {
                    Site::Defect => break,
                    Site::Cup(j) => {
                        pos = j;
                        going_down = false;
                    }
                }
            } else {
                match v.sites[pos] {
                    Site::Defect => return Ok(false),
                    Site::Cup(j) => {
                        pos = j;
                        going_down = true;
                    }
                }
            }
        }
    }
    Ok(true)
}
