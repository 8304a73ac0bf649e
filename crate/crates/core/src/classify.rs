//! Reversibility criteria on Jordan data.
//!
//! Every criterion is a perfect-matching condition on the multiset of
//! blocks, so a greedy scan over the canonically ordered blocks finds a
//! pairing whenever one exists.

use std::fmt;

use crate::canonical::{JordanBlock, JordanSpec};
use crate::scalar::GaussianRational;

/// One group of a block pairing; indices refer to `spec.blocks()`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum BlockGroup {
    Single(usize),
    /// `(block, partner)`, the block first in canonical order.
    Pair(usize, usize),
}

impl BlockGroup {
    pub fn members(&self) -> Vec<usize> {
        match *self {
            BlockGroup::Single(a) => vec![a],
            BlockGroup::Pair(a, b) => vec![a, b],
        }
    }

    pub fn describe(&self, spec: &JordanSpec) -> String {
        let b = spec.blocks();
        match *self {
            BlockGroup::Single(a) => format!("{{{}}}", b[a]),
            BlockGroup::Pair(a, c) => format!("{{{}, {}}}", b[a], b[c]),
        }
    }
}

/// What a block must be matched with.
enum Need {
    Alone,
    Partner(GaussianRational),
}

/// Greedy matching; `Err(idx)` names a block without a partner.
fn pair_blocks(spec: &JordanSpec, rule: impl Fn(&JordanBlock) -> Need) -> Result<Vec<BlockGroup>, usize> {
    let blocks = spec.blocks();
    let mut used = vec![false; blocks.len()];
    let mut groups = Vec::new();
    for idx in 0..blocks.len() {
        if used[idx] {
            continue;
        }
        used[idx] = true;
        match rule(&blocks[idx]) {
            Need::Alone => groups.push(BlockGroup::Single(idx)),
            Need::Partner(partner) => {
                let found = (0..blocks.len()).find(|&k| {
                    !used[k] && blocks[k].size == blocks[idx].size && blocks[k].eigenvalue == partner
                });
                match found {
                    Some(k) => {
                        used[k] = true;
                        groups.push(BlockGroup::Pair(idx, k));
                    }
                    None => return Err(idx),
                }
            }
        }
    }
    Ok(groups)
}

fn inverse_need(b: &JordanBlock) -> Need {
    if b.eigenvalue.is_unit_modulus() {
        Need::Alone
    } else {
        Need::Partner(b.eigenvalue.class_rep_inverse().expect("spec eigenvalues are nonzero"))
    }
}

/// Pairs `{J(λ,s), J(λ⁻¹,s)}` for `|λ| ≠ 1`, unit-modulus blocks alone.
pub fn inverse_pairing(spec: &JordanSpec) -> Result<Vec<BlockGroup>, usize> {
    pair_blocks(spec, inverse_need)
}

/// As [`inverse_pairing`], but non-real unit-modulus blocks must also come
/// in identical pairs.
pub fn strong_pairing(spec: &JordanSpec) -> Result<Vec<BlockGroup>, usize> {
    pair_blocks(spec, |b| {
        if b.eigenvalue.is_unit_modulus() && !b.eigenvalue.is_real() {
            Need::Partner(b.eigenvalue.clone())
        } else {
            inverse_need(b)
        }
    })
}

/// Pairs `{J(λ,s), J(-λ⁻¹,s)}`, blocks `J(i,s)` alone.
pub fn neg_pairing(spec: &JordanSpec) -> Result<Vec<BlockGroup>, usize> {
    let i = GaussianRational::i();
    pair_blocks(spec, |b| {
        if b.eigenvalue == i {
            Need::Alone
        } else {
            Need::Partner(b.eigenvalue.class_rep_neg_inverse().expect("spec eigenvalues are nonzero"))
        }
    })
}

pub fn describe_inverse_obstruction(spec: &JordanSpec, idx: usize) -> String {
    let b = &spec.blocks()[idx];
    let partner = b.eigenvalue.class_rep_inverse().expect("nonzero");
    format!(
        "not reversible: {b} has |λ| ≠ 1 and no unmatched partner J({partner},{})",
        b.size
    )
}

pub fn describe_strong_obstruction(spec: &JordanSpec, idx: usize) -> String {
    let b = &spec.blocks()[idx];
    if b.eigenvalue.is_unit_modulus() {
        let count = spec.blocks().iter().filter(|c| *c == b).count();
        format!(
            "not strongly reversible: {b} has non-real unit-modulus eigenvalue and occurs {count} time(s); \
             every such (eigenvalue, size) pair needs even multiplicity"
        )
    } else {
        describe_inverse_obstruction(spec, idx)
    }
}

pub fn describe_neg_obstruction(spec: &JordanSpec, idx: usize) -> String {
    let b = &spec.blocks()[idx];
    let partner = b.eigenvalue.class_rep_neg_inverse().expect("nonzero");
    format!(
        "not conjugate to minus its inverse: {b} has no unmatched partner J({partner},{})",
        b.size
    )
}

pub fn is_reversible(spec: &JordanSpec) -> Option<Vec<BlockGroup>> {
    inverse_pairing(spec).ok()
}

pub fn is_strongly_reversible(spec: &JordanSpec) -> bool {
    strong_pairing(spec).is_ok()
}

pub fn is_neg_reversible(spec: &JordanSpec) -> Option<Vec<BlockGroup>> {
    neg_pairing(spec).ok()
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Classification {
    pub reversible: bool,
    pub strongly_reversible: bool,
    pub neg_reversible: bool,
    pub psl_reversible: bool,
    pub psl_strongly_reversible: bool,
    /// Human-readable pairing behind the positive flags (or the obstruction).
    pub witness_pairing: Vec<String>,
}

fn render(spec: &JordanSpec, label: &str, groups: &[BlockGroup]) -> String {
    let parts: Vec<String> = groups.iter().map(|g| g.describe(spec)).collect();
    format!("{label}: {}", parts.join(" "))
}

pub fn classify_psl(spec: &JordanSpec) -> Classification {
    let inverse = inverse_pairing(spec);
    let strong = strong_pairing(spec);
    let neg = neg_pairing(spec);
    let mut witness = Vec::new();
    match (&strong, &inverse) {
        (Ok(groups), _) => witness.push(render(spec, "inverse (involution)", groups)),
        (Err(s), Ok(groups)) => {
            witness.push(render(spec, "inverse (skew-involution)", groups));
            witness.push(describe_strong_obstruction(spec, *s));
        }
        (Err(_), Err(i)) => witness.push(describe_inverse_obstruction(spec, *i)),
    }
    match &neg {
        Ok(groups) => witness.push(render(spec, "neg-inverse", groups)),
        Err(i) => witness.push(describe_neg_obstruction(spec, *i)),
    }
    let reversible = inverse.is_ok();
    let neg_reversible = neg.is_ok();
    let psl = reversible || neg_reversible;
    Classification {
        reversible,
        strongly_reversible: strong.is_ok(),
        neg_reversible,
        psl_reversible: psl,
        psl_strongly_reversible: psl,
        witness_pairing: witness,
    }
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "reversible:              {}", self.reversible)?;
        writeln!(f, "strongly_reversible:     {}", self.strongly_reversible)?;
        writeln!(f, "neg_reversible:          {}", self.neg_reversible)?;
        writeln!(f, "psl_reversible:          {}", self.psl_reversible)?;
        write!(f, "psl_strongly_reversible: {}", self.psl_strongly_reversible)
    }
}
