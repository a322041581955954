//! Two-leg ladder geometry and nearest-neighbour dimer coverings.
//!
//! Sites are indexed row-major: site `r * m + c` sits in row `r ∈ {0, 1}`
//! and column `c ∈ 0..m`. This index is also the bit position of the site in
//! [`StateVector`](crate::StateVector) basis states.
//!
//! Sublattice A holds the sites with `r + c` even. Every edge carries an
//! orientation (tail `a`, head `b`) taken from the local checkerboard: a
//! rail edge from column `c` to `c + 1` starts at the site with `r + c`
//! even, a step starts at its row with `r + c` even. Away from the periodic
//! seam this puts `a` in A and `b` in B. On odd-m periodic ladders the two
//! seam edges join same-sublattice sites; [`WrapConvention`] decides whether
//! dimers may sit on them.

use std::fmt::{self, Write as _};

use crate::{Error, Result};

pub type SiteId = usize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Boundary {
    Open,
    Periodic,
}

impl fmt::Display for Boundary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Boundary::Open => "open",
            Boundary::Periodic => "periodic",
        })
    }
}

impl std::str::FromStr for Boundary {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "open" => Ok(Boundary::Open),
            "periodic" => Ok(Boundary::Periodic),
            other => Err(Error::Config(format!("unknown boundary '{other}' (expected open or periodic)"))),
        }
    }
}

/// Treatment of the seam rail edges of an odd-m periodic ladder, which join
/// two sites of the same sublattice. Ignored for even m and open ladders.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum WrapConvention {
    /// Seam edges carry dimers, oriented by the local checkerboard as if the
    /// ladder continued into a copy of column 0 placed after column m − 1.
    #[default]
    Twisted,
    /// Seam edges exist for adjacency but never carry a dimer, so the
    /// coverings are exactly those of the open ladder.
    Forbidden,
}

impl fmt::Display for WrapConvention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            WrapConvention::Twisted => "twisted",
            WrapConvention::Forbidden => "forbidden",
        })
    }
}

impl std::str::FromStr for WrapConvention {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "twisted" => Ok(WrapConvention::Twisted),
            "forbidden" => Ok(WrapConvention::Forbidden),
            other => Err(Error::Config(format!("unknown wrap convention '{other}' (expected twisted or forbidden)"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sublattice {
    A,
    B,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EdgeKind {
    Rail,
    Step,
}

impl fmt::Display for EdgeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EdgeKind::Rail => "rail",
            EdgeKind::Step => "step",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Edge {
    /// Tail of the directed dimer (the A site away from the seam).
    pub a: SiteId,
    pub b: SiteId,
    pub kind: EdgeKind,
    pub dimer_allowed: bool,
    /// Periodic wrap edge between column m − 1 and column 0.
    pub wraps: bool,
}

impl Edge {
    pub fn touches(&self, site: SiteId) -> bool {
        self.a == site || self.b == site
    }

    pub fn other(&self, site: SiteId) -> Option<SiteId> {
        if self.a == site {
            Some(self.b)
        } else if self.b == site {
            Some(self.a)
        } else {
            None
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LadderLattice {
    m: usize,
    boundary: Boundary,
    wrap: WrapConvention,
    edges: Vec<Edge>,
}

/// Ladder with the default seam convention.
pub fn build_ladder(m: usize, boundary: Boundary) -> Result<LadderLattice> {
    LadderLattice::new(m, boundary, WrapConvention::default())
}

impl LadderLattice {
    /// Edge order: row-0 rails by column, row-1 rails by column, then steps
    /// by column. For m = 2 no wrap edges are added under periodic boundary,
    /// since they would duplicate the existing rails.
    pub fn new(m: usize, boundary: Boundary, wrap: WrapConvention) -> Result<Self> {
        if m < 2 {
            return Err(Error::LadderTooSmall(m));
        }
        let site = |r: usize, c: usize| r * m + c;
        let has_wrap = boundary == Boundary::Periodic && m > 2;
        let mut edges = Vec::with_capacity(3 * m);
        for r in 0..2 {
            for c in 0..m {
                let wraps = c == m - 1;
                if wraps && !has_wrap {
                    continue;
                }
                let (left, right) = (site(r, c), site(r, (c + 1) % m));
                let (a, b) = if (r + c) % 2 == 0 { (left, right) } else { (right, left) };
                let dimer_allowed = !wraps || m % 2 == 0 || wrap == WrapConvention::Twisted;
                edges.push(Edge { a, b, kind: EdgeKind::Rail, dimer_allowed, wraps });
            }
        }
        for c in 0..m {
            let (a, b) = if c % 2 == 0 { (site(0, c), site(1, c)) } else { (site(1, c), site(0, c)) };
            edges.push(Edge { a, b, kind: EdgeKind::Step, dimer_allowed: true, wraps: false });
        }
        Ok(Self { m, boundary, wrap, edges })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n_sites(&self) -> usize {
        2 * self.m
    }

    pub fn boundary(&self) -> Boundary {
        self.boundary
    }

    pub fn wrap_convention(&self) -> WrapConvention {
        self.wrap
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn sites(&self) -> std::ops::Range<SiteId> {
        0..self.n_sites()
    }

    pub fn row(&self, site: SiteId) -> usize {
        site / self.m
    }

    pub fn col(&self, site: SiteId) -> usize {
        site % self.m
    }

    pub fn sublattice(&self, site: SiteId) -> Sublattice {
        if (self.row(site) + self.col(site)) % 2 == 0 {
            Sublattice::A
        } else {
            Sublattice::B
        }
    }

    /// Odd-m periodic ladder whose seam edges join like sublattices.
    pub fn has_frustrated_seam(&self) -> bool {
        self.boundary == Boundary::Periodic && self.m % 2 == 1 && self.m > 2
    }

    pub fn degree(&self, site: SiteId) -> usize {
        self.edges.iter().filter(|e| e.touches(site)).count()
    }

    pub fn incident_edges(&self, site: SiteId) -> impl Iterator<Item = (usize, &Edge)> {
        self.edges.iter().enumerate().filter(move |(_, e)| e.touches(site))
    }

    /// Plain-text dump, one line per site then one per edge.
    pub fn describe(&self) -> String {
        let mut out = String::new();
        for s in self.sites() {
            let sub = match self.sublattice(s) {
                Sublattice::A => "A",
                Sublattice::B => "B",
            };
            let _ = writeln!(out, "site {s} row {} col {} sublattice {sub}", self.row(s), self.col(s));
        }
        for e in &self.edges {
            let allowed = if e.dimer_allowed { "allowed" } else { "forbidden" };
            let _ = writeln!(out, "edge {} {} {} {allowed}", e.a, e.b, e.kind);
        }
        out
    }
}

/// One directed dimer: `tail` is the first site of the singlet.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Dimer {
    pub tail: SiteId,
    pub head: SiteId,
}

/// A perfect matching of the lattice by dimer-allowed edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DimerCovering {
    edge_indices: Vec<usize>,
    dimers: Vec<Dimer>,
}

impl DimerCovering {
    /// Checks that the listed edges are dimer-allowed and cover every site
    /// exactly once.
    pub fn from_edges(lattice: &LadderLattice, mut edge_indices: Vec<usize>) -> Result<Self> {
        let n = lattice.n_sites();
        let invalid = |reason: String| Error::InvalidCovering { n, reason };
        edge_indices.sort_unstable();
        let mut covered = vec![false; n];
        let mut dimers = Vec::with_capacity(edge_indices.len());
        for &i in &edge_indices {
            let e = lattice.edges().get(i).ok_or_else(|| invalid(format!("no edge {i}")))?;
            if !e.dimer_allowed {
                return Err(invalid(format!("edge ({}, {}) cannot carry a dimer", e.a, e.b)));
            }
            for s in [e.a, e.b] {
                if std::mem::replace(&mut covered[s], true) {
                    return Err(invalid(format!("site {s} covered twice")));
                }
            }
            dimers.push(Dimer { tail: e.a, head: e.b });
        }
        if let Some(s) = covered.iter().position(|&c| !c) {
            return Err(invalid(format!("site {s} uncovered")));
        }
        Ok(Self { edge_indices, dimers })
    }

    /// Unchecked constructor for arbitrary directed dimers; validated when
    /// turned into a state.
    pub fn from_dimers(dimers: Vec<Dimer>) -> Self {
        Self { edge_indices: Vec::new(), dimers }
    }

    /// Sorted edge indices into the lattice's edge list (empty when built
    /// from bare dimers).
    pub fn edge_indices(&self) -> &[usize] {
        &self.edge_indices
    }

    pub fn dimers(&self) -> &[Dimer] {
        &self.dimers
    }
}

/// Every perfect matching built from dimer-allowed edges, ordered
/// lexicographically by sorted edge-index list.
pub fn enumerate_coverings(lattice: &LadderLattice) -> Vec<DimerCovering> {
    let n = lattice.n_sites();
    let mut adjacency: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, e) in lattice.edges().iter().enumerate() {
        if e.dimer_allowed {
            adjacency[e.a].push(i);
            adjacency[e.b].push(i);
        }
    }

    fn extend(
        lattice: &LadderLattice,
        adjacency: &[Vec<usize>],
        covered: &mut [bool],
        chosen: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        let Some(site) = covered.iter().position(|&c| !c) else {
            out.push(chosen.clone());
            return;
        };
        for &i in &adjacency[site] {
            let other = lattice.edges()[i].other(site).expect("adjacent edge touches site");
            if covered[other] {
                continue;
            }
            covered[site] = true;
            covered[other] = true;
            chosen.push(i);
            extend(lattice, adjacency, covered, chosen, out);
            chosen.pop();
            covered[site] = false;
            covered[other] = false;
        }
    }

    let mut raw = Vec::new();
    extend(lattice, &adjacency, &mut vec![false; n], &mut Vec::new(), &mut raw);
    for c in &mut raw {
        c.sort_unstable();
    }
    raw.sort();
    raw.into_iter()
        .map(|edges| DimerCovering::from_edges(lattice, edges).expect("enumerated covering is a perfect matching"))
        .collect()
}

/// Number of coverings by a column transfer recursion, independent of
/// [`enumerate_coverings`].
///
/// The state entering a column is the set of its rows already covered by a
/// rail from the left. Periodic ladders fix which seam rails are used and
/// require the last column to hand exactly that set back to column 0.
pub fn count_coverings(lattice: &LadderLattice) -> u64 {
    let m = lattice.m();
    let allowed = |r: usize, c: usize| -> bool {
        // Rail from column c to c + 1 (mod m) in row r.
        lattice
            .edges()
            .iter()
            .find(|e| e.kind == EdgeKind::Rail && {
                let (x, y) = (r * m + c, r * m + (c + 1) % m);
                (e.a == x && e.b == y) || (e.a == y && e.b == x)
            })
            .map_or(false, |e| e.dimer_allowed)
    };

    let seam_masks: Vec<u8> = if lattice.boundary() == Boundary::Periodic && m > 2 {
        (0u8..4).filter(|&w| (0..2).all(|r| w & (1 << r) == 0 || allowed(r, m - 1))).collect()
    } else {
        vec![0]
    };

    let mut total = 0u64;
    for &seam in &seam_masks {
        let mut ways = [0u64; 4];
        ways[seam as usize] = 1;
        for c in 0..m {
            let last = c == m - 1;
            let mut next = [0u64; 4];
            for incoming in 0u8..4 {
                if ways[incoming as usize] == 0 {
                    continue;
                }
                for outgoing in 0u8..4 {
                    if incoming & outgoing != 0 {
                        continue;
                    }
                    if last && outgoing != seam {
                        continue;
                    }
                    if !last && (0..2).any(|r| outgoing & (1 << r) != 0 && !allowed(r, c)) {
                        continue;
                    }
                    // Rows left free must pair up through the step.
                    let free = !(incoming | outgoing) & 0b11;
                    if free == 0b01 || free == 0b10 {
                        continue;
                    }
                    let target = if last { 0 } else { outgoing as usize };
                    next[target] += ways[incoming as usize];
                }
            }
            ways = next;
        }
        total += ways[0];
    }
    total
}
