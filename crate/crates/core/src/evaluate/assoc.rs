use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::matrix::Matrix;

/// Binary AP-UE association with both per-UE and per-AP views kept in sync.
///
/// Clusters keep insertion order; most callers only care about membership.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matching {
    assoc: Matrix<bool>,
    ue_clusters: Vec<Vec<usize>>,
    ap_loads: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MatchingViolation {
    Asymmetric { ue: usize, ap: usize },
    ApOverloaded { ap: usize, load: usize },
    UeOverloaded { ue: usize, cluster: usize },
}

impl fmt::Display for MatchingViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Asymmetric { ue, ap } => write!(f, "UE {ue} and AP {ap} disagree about their association"),
            Self::ApOverloaded { ap, load } => write!(f, "AP {ap} serves {load} UEs, above its quota"),
            Self::UeOverloaded { ue, cluster } => write!(f, "UE {ue} has {cluster} serving APs, above its quota"),
        }
    }
}

impl Matching {
    pub fn empty(num_ues: usize, num_aps: usize) -> Self {
        Self {
            assoc: Matrix::filled(num_ues, num_aps, false),
            ue_clusters: vec![Vec::new(); num_ues],
            ap_loads: vec![Vec::new(); num_aps],
        }
    }

    /// Every UE associated with every AP.
    pub fn full(num_ues: usize, num_aps: usize) -> Self {
        let mut m = Self::empty(num_ues, num_aps);
        for ue in 0..num_ues {
            for ap in 0..num_aps {
                m.insert(ue, ap);
            }
        }
        m
    }

    pub fn from_pairs(num_ues: usize, num_aps: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut m = Self::empty(num_ues, num_aps);
        for (ue, ap) in pairs {
            m.insert(ue, ap);
        }
        m
    }

    pub fn num_ues(&self) -> usize {
        self.ue_clusters.len()
    }

    pub fn num_aps(&self) -> usize {
        self.ap_loads.len()
    }

    pub fn is_associated(&self, ue: usize, ap: usize) -> bool {
        self.assoc[(ue, ap)]
    }

    /// Adds `(ue, ap)`; returns false if the pair was already associated.
    pub fn insert(&mut self, ue: usize, ap: usize) -> bool {
        if self.assoc[(ue, ap)] {
            return false;
        }
        self.assoc[(ue, ap)] = true;
        self.ue_clusters[ue].push(ap);
        self.ap_loads[ap].push(ue);
        true
    }

    pub fn remove(&mut self, ue: usize, ap: usize) -> bool {
        if !self.assoc[(ue, ap)] {
            return false;
        }
        self.assoc[(ue, ap)] = false;
        self.ue_clusters[ue].retain(|&a| a != ap);
        self.ap_loads[ap].retain(|&u| u != ue);
        true
    }

    /// Copy of this matching with `(ue, ap)` added.
    pub fn with(&self, ue: usize, ap: usize) -> Self {
        let mut next = self.clone();
        next.insert(ue, ap);
        next
    }

    /// APs serving `ue`.
    pub fn cluster(&self, ue: usize) -> &[usize] {
        &self.ue_clusters[ue]
    }

    /// UEs served by `ap`.
    pub fn load(&self, ap: usize) -> &[usize] {
        &self.ap_loads[ap]
    }

    pub fn association_count(&self) -> usize {
        self.ue_clusters.iter().map(Vec::len).sum()
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.ue_clusters.iter().enumerate().flat_map(|(ue, c)| c.iter().map(move |&ap| (ue, ap)))
    }

    /// Checks that the binary matrix and both cluster views agree.
    pub fn check_symmetry(&self) -> Result<(), MatchingViolation> {
        for ue in 0..self.num_ues() {
            for ap in 0..self.num_aps() {
                let a = self.assoc[(ue, ap)];
                let in_cluster = self.ue_clusters[ue].contains(&ap);
                let in_load = self.ap_loads[ap].contains(&ue);
                if a != in_cluster || a != in_load {
                    return Err(MatchingViolation::Asymmetric { ue, ap });
                }
            }
        }
        Ok(())
    }

    pub fn check_quotas(&self, ap_quota: usize, ue_quota: usize) -> Result<(), MatchingViolation> {
        if let Some((ap, l)) = self.ap_loads.iter().enumerate().find(|(_, l)| l.len() > ap_quota) {
            return Err(MatchingViolation::ApOverloaded { ap, load: l.len() });
        }
        if let Some((ue, c)) = self.ue_clusters.iter().enumerate().find(|(_, c)| c.len() > ue_quota) {
            return Err(MatchingViolation::UeOverloaded { ue, cluster: c.len() });
        }
        Ok(())
    }

    pub fn respects_quotas(&self, ap_quota: usize, ue_quota: usize) -> bool {
        self.check_quotas(ap_quota, ue_quota).is_ok()
    }
}
