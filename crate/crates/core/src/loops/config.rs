//! Link configurations of the loop soup on the complete graph.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LinkKind {
    Cross,
    Bar,
}

/// A cross or double bar joining pseudo-sites `a < b` (on different sites) at `time`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Link {
    pub a: u32,
    pub b: u32,
    pub time: f64,
    pub kind: LinkKind,
}

/// Vertical period of the threads. Loop lengths count passages through time 0.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum TimeWindow {
    /// `[0, β/n)`; time 0 coincides with the periodic wrap.
    Periodic { length: f64 },
    /// `[-β/2n, β/2n)`; the site permutations act at the wrap and time 0 is interior.
    Centered { half_width: f64 },
}

impl TimeWindow {
    pub fn for_model(n: u32, two_s: u32, beta: f64) -> Self {
        let length = beta / f64::from(n);
        if two_s == 1 {
            TimeWindow::Periodic { length }
        } else {
            TimeWindow::Centered { half_width: length / 2.0 }
        }
    }

    pub fn start(&self) -> f64 {
        match *self {
            TimeWindow::Periodic { .. } => 0.0,
            TimeWindow::Centered { half_width } => -half_width,
        }
    }

    pub fn length(&self) -> f64 {
        match *self {
            TimeWindow::Periodic { length } => length,
            TimeWindow::Centered { half_width } => 2.0 * half_width,
        }
    }

    pub fn contains(&self, t: f64) -> bool {
        t >= self.start() && t < self.start() + self.length()
    }

    pub(crate) fn zero_at_wrap(&self) -> bool {
        matches!(self, TimeWindow::Periodic { .. })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LoopConfiguration {
    pub n: u32,
    pub two_s: u32,
    pub beta: f64,
    pub u: f64,
    pub window: TimeWindow,
    pub links: Vec<Link>,
    /// `site_perms[i][α]` is the pseudo-site reached by moving up through the wrap from `(i, α)`.
    pub site_perms: Vec<Vec<u32>>,
}

impl LoopConfiguration {
    /// Configuration without links and with identity site permutations.
    pub fn empty(n: u32, two_s: u32, beta: f64, u: f64) -> Result<Self> {
        if n < 2 {
            return Err(Error::domain(format!("need at least two sites, got {n}")));
        }
        if two_s == 0 {
            return Err(Error::domain("two_s must be positive"));
        }
        if !(beta > 0.0 && beta.is_finite()) {
            return Err(Error::domain(format!("beta must be positive, got {beta}")));
        }
        if !(0.0..=1.0).contains(&u) {
            return Err(Error::domain(format!("u must lie in [0,1], got {u}")));
        }
        Ok(Self {
            n,
            two_s,
            beta,
            u,
            window: TimeWindow::for_model(n, two_s, beta),
            links: Vec::new(),
            site_perms: vec![(0..two_s).collect(); n as usize],
        })
    }

    pub fn pseudo_sites(&self) -> u32 {
        self.n * self.two_s
    }

    pub fn site_of(&self, p: u32) -> u32 {
        p / self.two_s
    }

    /// Number of pseudo-edges joining different sites.
    pub fn pseudo_edges(&self) -> u64 {
        let n = u64::from(self.n);
        n * (n - 1) / 2 * u64::from(self.two_s).pow(2)
    }

    /// Expected number of links under the free Poisson measure.
    pub fn poisson_mass(&self) -> f64 {
        self.pseudo_edges() as f64 * self.window.length()
    }

    /// Uniformly random pseudo-edge `(a, b)` with `a < b` on different sites.
    pub fn random_pseudo_edge<R: Rng + ?Sized>(&self, rng: &mut R) -> (u32, u32) {
        let site_a = rng.random_range(0..self.n);
        let mut site_b = rng.random_range(0..self.n - 1);
        if site_b >= site_a {
            site_b += 1;
        }
        let a = site_a * self.two_s + rng.random_range(0..self.two_s);
        let b = site_b * self.two_s + rng.random_range(0..self.two_s);
        (a.min(b), a.max(b))
    }

    pub fn random_link<R: Rng + ?Sized>(&self, rng: &mut R) -> Link {
        let (a, b) = self.random_pseudo_edge(rng);
        let time = self.window.start() + rng.random::<f64>() * self.window.length();
        let kind = if rng.random::<f64>() < self.u { LinkKind::Cross } else { LinkKind::Bar };
        Link { a, b, time, kind }
    }

    /// Links grouped by pseudo-edge, each list sorted by time.
    pub fn edge_links(&self) -> BTreeMap<(u32, u32), Vec<(f64, LinkKind)>> {
        let mut map: BTreeMap<_, Vec<_>> = BTreeMap::new();
        for l in &self.links {
            map.entry((l.a, l.b)).or_default().push((l.time, l.kind));
        }
        for v in map.values_mut() {
            v.sort_by(|x, y| x.0.total_cmp(&y.0));
        }
        map
    }

    pub fn count_bars(&self) -> usize {
        self.links.iter().filter(|l| l.kind == LinkKind::Bar).count()
    }

    /// Structural checks that the tracer relies on.
    pub fn validate(&self) -> Result<()> {
        let np = self.pseudo_sites();
        for (i, l) in self.links.iter().enumerate() {
            if l.a >= np || l.b >= np || l.a >= l.b {
                return Err(Error::Integrity(format!("link {i} joins invalid pseudo-sites {} and {}", l.a, l.b)));
            }
            if self.site_of(l.a) == self.site_of(l.b) {
                return Err(Error::Integrity(format!("link {i} joins two pseudo-sites of site {}", self.site_of(l.a))));
            }
            if !self.window.contains(l.time) {
                return Err(Error::Integrity(format!("link {i} at time {} lies outside the window", l.time)));
            }
        }
        if self.site_perms.len() != self.n as usize {
            return Err(Error::Integrity("one permutation per site required".into()));
        }
        for (i, perm) in self.site_perms.iter().enumerate() {
            let mut seen = vec![false; self.two_s as usize];
            if perm.len() != self.two_s as usize {
                return Err(Error::Integrity(format!("site {i} permutation has wrong size")));
            }
            for &x in perm {
                if x >= self.two_s || std::mem::replace(&mut seen[x as usize], true) {
                    return Err(Error::Integrity(format!("site {i} permutation is not a bijection")));
                }
            }
        }
        Ok(())
    }
}

pub fn random_permutation<R: Rng + ?Sized>(len: u32, rng: &mut R) -> Vec<u32> {
    let mut perm: Vec<u32> = (0..len).collect();
    perm.shuffle(rng);
    perm
}

/// Draw from the free measure: a rate-one Poisson process of links on every
/// pseudo-edge, crosses with probability `u`, and iid uniform site permutations.
pub fn sample_free_links<R: Rng + ?Sized>(n: u32, two_s: u32, beta: f64, u: f64, rng: &mut R) -> Result<LoopConfiguration> {
    let mut config = LoopConfiguration::empty(n, two_s, beta, u)?;
    let mass = config.poisson_mass();
    let mut clock = -(1.0 - rng.random::<f64>()).ln();
    while clock < mass {
        let link = config.random_link(rng);
        config.links.push(link);
        clock -= (1.0 - rng.random::<f64>()).ln();
    }
    if two_s > 1 {
        for i in 0..n as usize {
            config.site_perms[i] = random_permutation(two_s, rng);
        }
    }
    Ok(config)
}
