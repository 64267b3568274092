//! Monotone access structures over a small, ordered player set.
//!
//! A structure is stored as its antichain of minimal authorized sets.
//! Internally coalitions are bitmasks over player positions.

use serde::Serialize;

use crate::error::{QssError, Result};

/// Upper bound on players for any structure (subset enumeration is `2^n`).
pub const MAX_PLAYERS: usize = 24;
/// Upper bound for the `3^n` enumeration of subset pairs.
pub const MAX_PAIR_PLAYERS: usize = 12;

pub type Coalition = u64;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AccessStructure {
    players: Vec<String>,
    minimal_authorized: Vec<Vec<String>>,
    #[serde(skip)]
    minimal_masks: Vec<Coalition>,
    #[serde(skip)]
    input_was_antichain: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AccessFlags {
    pub monotone_antichain: bool,
    pub quantum_admissible: bool,
    pub complement_closed: bool,
    /// Two disjoint authorized sets, when the structure is not admissible.
    pub disjoint_witness: Option<(Vec<String>, Vec<String>)>,
    /// An unauthorized set whose complement is also unauthorized.
    pub complement_witness: Option<Vec<String>>,
}

impl AccessStructure {
    /// Builds a structure; supersets of other listed sets and duplicates are
    /// dropped with a warning.
    pub fn new(players: Vec<String>, minimal_sets: Vec<Vec<String>>) -> Result<Self> {
        if players.is_empty() {
            return Err(QssError::input("access structure needs at least one player"));
        }
        if players.len() > MAX_PLAYERS {
            return Err(QssError::Size(format!("{} players exceeds the maximum of {MAX_PLAYERS}", players.len())));
        }
        for (i, p) in players.iter().enumerate() {
            if p.is_empty() {
                return Err(QssError::input("player labels must be nonempty"));
            }
            if players[..i].contains(p) {
                return Err(QssError::input(format!("duplicate player '{p}'")));
            }
        }
        let mut masks = Vec::with_capacity(minimal_sets.len());
        for set in &minimal_sets {
            if set.is_empty() {
                return Err(QssError::input("minimal authorized sets must be nonempty"));
            }
            masks.push(mask_in(&players, set)?);
        }
        let mut keep: Vec<Coalition> = Vec::new();
        let mut antichain = true;
        for (i, &m) in masks.iter().enumerate() {
            let redundant = masks.iter().enumerate().any(|(j, &o)| j != i && o & m == o && (o != m || j < i));
            if redundant {
                antichain = false;
            } else {
                keep.push(m);
            }
        }
        if !antichain {
            log::warn!("access structure listed redundant sets; normalized to its minimal antichain");
        }
        keep.sort_by_key(|&m| canonical_key(m));
        let minimal_authorized = keep.iter().map(|&m| labels_in(&players, m)).collect();
        Ok(Self { players, minimal_authorized, minimal_masks: keep, input_was_antichain: antichain })
    }

    pub fn players(&self) -> &[String] {
        &self.players
    }

    pub fn minimal_authorized(&self) -> &[Vec<String>] {
        &self.minimal_authorized
    }

    pub fn player_count(&self) -> usize {
        self.players.len()
    }

    pub fn full_mask(&self) -> Coalition {
        full_mask(self.players.len())
    }

    pub fn mask<S: AsRef<str>>(&self, labels: &[S]) -> Result<Coalition> {
        mask_in(&self.players, labels)
    }

    pub fn labels(&self, mask: Coalition) -> Vec<String> {
        labels_in(&self.players, mask)
    }

    pub fn is_authorized<S: AsRef<str>>(&self, labels: &[S]) -> Result<bool> {
        Ok(self.is_authorized_mask(self.mask(labels)?))
    }

    pub fn is_authorized_mask(&self, mask: Coalition) -> bool {
        self.minimal_masks.iter().any(|&m| m & !mask == 0)
    }

    /// Every nonempty coalition, ordered by size and then lexicographically
    /// by player position.
    pub fn coalitions(&self) -> Vec<Coalition> {
        ordered_coalitions(self.players.len())
    }

    /// Unauthorized sets that become authorized when any player is added.
    pub fn maximal_unauthorized(&self) -> Vec<Coalition> {
        let full = self.full_mask();
        let mut out: Vec<Coalition> = (0..=full)
            .filter(|&m| !self.is_authorized_mask(m))
            .filter(|&m| {
                (0..self.players.len()).filter(|i| m & (1 << i) == 0).all(|i| self.is_authorized_mask(m | (1 << i)))
            })
            .collect();
        out.sort_by_key(|&m| canonical_key(m));
        out
    }

    pub fn minimal_masks(&self) -> &[Coalition] {
        &self.minimal_masks
    }

    pub fn classify(&self) -> AccessFlags {
        let mut disjoint_witness = None;
        'outer: for (i, &a) in self.minimal_masks.iter().enumerate() {
            for &b in &self.minimal_masks[i + 1..] {
                if a & b == 0 {
                    disjoint_witness = Some((self.labels(a), self.labels(b)));
                    break 'outer;
                }
            }
        }
        let full = self.full_mask();
        let complement_witness = self
            .coalitions_with_empty()
            .into_iter()
            .find(|&m| !self.is_authorized_mask(m) && !self.is_authorized_mask(full & !m))
            .map(|m| self.labels(m));
        AccessFlags {
            monotone_antichain: self.input_was_antichain,
            quantum_admissible: disjoint_witness.is_none(),
            complement_closed: complement_witness.is_none(),
            disjoint_witness,
            complement_witness,
        }
    }

    fn coalitions_with_empty(&self) -> Vec<Coalition> {
        let mut v = vec![0];
        v.extend(self.coalitions());
        v
    }

    /// Ordered pairs `(A, B)` of disjoint unauthorized coalitions whose union
    /// is authorized.
    pub fn share_bound_pair_masks(&self) -> Result<Vec<(Coalition, Coalition)>> {
        let n = self.players.len();
        if n > MAX_PAIR_PLAYERS {
            return Err(QssError::Size(format!(
                "pair enumeration over {n} players exceeds the limit of {MAX_PAIR_PLAYERS}"
            )));
        }
        let order = self.coalitions();
        let mut out = Vec::new();
        for &a in &order {
            if self.is_authorized_mask(a) {
                continue;
            }
            for &b in &order {
                if a & b != 0 || self.is_authorized_mask(b) {
                    continue;
                }
                if self.is_authorized_mask(a | b) {
                    out.push((a, b));
                }
            }
        }
        Ok(out)
    }

    pub fn share_bound_pairs(&self) -> Result<Vec<(Vec<String>, Vec<String>)>> {
        Ok(self.share_bound_pair_masks()?.into_iter().map(|(a, b)| (self.labels(a), self.labels(b))).collect())
    }

    /// Coalitions that some share-bound pair forces to carry at least the
    /// secret's entropy.
    pub fn forced_share_bounds(&self) -> Result<Vec<Vec<String>>> {
        let mut masks: Vec<Coalition> = self.share_bound_pair_masks()?.into_iter().flat_map(|(a, b)| [a, b]).collect();
        masks.sort_by_key(|&m| canonical_key(m));
        masks.dedup();
        Ok(masks.into_iter().map(|m| self.labels(m)).collect())
    }

    /// Same structure with one more player who belongs to no minimal set.
    pub fn with_extra_player(&self, label: &str) -> Result<Self> {
        let mut players = self.players.clone();
        players.push(label.to_string());
        Self::new(players, self.minimal_authorized.clone())
    }

    /// Same structure under new player labels (positions unchanged).
    pub fn relabeled(&self, labels: &[String]) -> Result<Self> {
        if labels.len() != self.players.len() {
            return Err(QssError::input("relabeling must keep the player count"));
        }
        let sets = self.minimal_masks.iter().map(|&m| labels_in(labels, m)).collect();
        Self::new(labels.to_vec(), sets)
    }
}

/// Players `P1..Pn`, minimal sets all `t`-subsets.
pub fn threshold_structure(t: usize, n: usize) -> Result<AccessStructure> {
    if t == 0 || t > n {
        return Err(QssError::input(format!("threshold needs 1 <= t <= n, got t={t}, n={n}")));
    }
    if n > MAX_PLAYERS {
        return Err(QssError::Size(format!("{n} players exceeds the maximum of {MAX_PLAYERS}")));
    }
    let players: Vec<String> = (1..=n).map(|i| format!("P{i}")).collect();
    let sets = ordered_coalitions(n)
        .into_iter()
        .filter(|m| m.count_ones() as usize == t)
        .map(|m| labels_in(&players, m))
        .collect();
    AccessStructure::new(players, sets)
}

/// Key halves `A`, `B` and ciphertext `M`; authorized sets `{A,M}` and `{B,M}`.
pub fn vernam_structure() -> AccessStructure {
    AccessStructure::new(
        vec!["A".into(), "B".into(), "M".into()],
        vec![vec!["A".into(), "M".into()], vec!["B".into(), "M".into()]],
    )
    .expect("static structure is valid")
}

pub(crate) fn full_mask(n: usize) -> Coalition {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

fn mask_in<S: AsRef<str>>(players: &[String], labels: &[S]) -> Result<Coalition> {
    let mut mask = 0;
    for l in labels {
        let l = l.as_ref();
        let i = players.iter().position(|p| p == l).ok_or_else(|| QssError::input(format!("unknown player '{l}'")))?;
        mask |= 1 << i;
    }
    Ok(mask)
}

fn labels_in(players: &[String], mask: Coalition) -> Vec<String> {
    players.iter().enumerate().filter(|(i, _)| mask & (1 << i) != 0).map(|(_, p)| p.clone()).collect()
}

pub(crate) fn positions(mask: Coalition) -> Vec<usize> {
    (0..64).filter(|i| mask & (1 << i) != 0).collect()
}

fn canonical_key(mask: Coalition) -> (u32, Vec<usize>) {
    (mask.count_ones(), positions(mask))
}

/// Nonempty subsets of `n` players, by size then lexicographic.
pub(crate) fn ordered_coalitions(n: usize) -> Vec<Coalition> {
    let mut v: Vec<Coalition> = (1..=full_mask(n)).collect();
    v.sort_by_key(|&m| canonical_key(m));
    v
}
