//! The alternating-sum pipeline: branch, tensor, fold, and count the
//! constituents landing on `lambda`.

use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt::Write;

use crate::alcove::{fold_to_alcove, FoldStatus};
use crate::error::{Error, Result};
use crate::lie::Weight;
use crate::twist::{TwistData, TwistKind};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KwContribution {
    /// Constituent of `V(nu)|_{g^sigma} (x) V(mu)`.
    pub eta: Weight,
    pub multiplicity: u64,
    /// Fold sign, absent on a wall.
    pub sign: Option<i32>,
    /// Length of the folding element.
    pub length: usize,
    /// Whether the fold lands on `lambda`.
    pub matched: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct KwLedger {
    pub contributions: Vec<KwContribution>,
    pub total: i64,
}

fn check(tw: &TwistData, c: u32, lambda: &Weight, mu: &Weight, nu: &Weight) -> Result<()> {
    if tw.is_a2n_diagram() {
        return Err(Error::UnsupportedCombination(format!(
            "the alternating sum is not available for {} with {}",
            tw.ambient().name(),
            tw.kind()
        )));
    }
    let alphabet = tw.weight_alphabet(c);
    tw.check_in_alphabet("lambda", c, &alphabet, lambda)?;
    tw.check_in_alphabet("mu", c, &alphabet, mu)?;
    let amb = tw.ambient();
    amb.check_rank(nu)?;
    let on_level: i64 = nu
        .0
        .iter()
        .zip(&amb.highest_root().coroot_coords)
        .map(|(&a, &b)| a as i64 * b as i64)
        .sum();
    if !nu.is_dominant() || on_level > c as i64 {
        return Err(Error::WeightNotInAlphabet {
            slot: "nu".into(),
            weight: nu.0.clone(),
            level: c,
        });
    }
    Ok(())
}

/// `N(sigma; lambda, mu, nu)` as a signed count of folded constituents.
pub fn kac_walton_dimension(
    tw: &TwistData,
    c: u32,
    lambda: &Weight,
    mu: &Weight,
    nu: &Weight,
) -> Result<(u64, KwLedger)> {
    check(tw, c, lambda, mu, nu)?;
    let fixed = tw.fixed();
    let target = if tw.kind() == TwistKind::Identity {
        fixed.dual(lambda)
    } else {
        lambda.clone()
    };
    let mut constituents: BTreeMap<Weight, u64> = BTreeMap::new();
    for (b, mb) in tw.branch_to_fixed(nu)? {
        for (eta, m) in fixed.tensor_multiplicities(&b, mu)? {
            *constituents.entry(eta).or_insert(0) += m * mb;
        }
    }
    let mut ledger = KwLedger::default();
    for (eta, m) in constituents {
        let f = fold_to_alcove(tw, c, &eta);
        let matched = f.status == FoldStatus::Interior && f.weight.as_ref() == Some(&target);
        if matched {
            ledger.total += f.sign.unwrap() as i64 * m as i64;
        }
        ledger.contributions.push(KwContribution {
            eta,
            multiplicity: m,
            sign: f.sign,
            length: f.length,
            matched,
        });
    }
    assert!(ledger.total >= 0, "negative alternating sum {}", ledger.total);
    Ok((ledger.total as u64, ledger))
}

/// Per-length breakdown of the alternating sum.
pub fn euler_characteristic_report(
    tw: &TwistData,
    c: u32,
    lambda: &Weight,
    mu: &Weight,
    nu: &Weight,
) -> Result<String> {
    let (total, ledger) = kac_walton_dimension(tw, c, lambda, mu, nu)?;
    let mut by_length: BTreeMap<usize, i64> = BTreeMap::new();
    let mut walls = 0usize;
    for k in &ledger.contributions {
        match k.sign {
            None => walls += 1,
            Some(s) if k.matched => *by_length.entry(k.length).or_insert(0) += s as i64 * k.multiplicity as i64,
            Some(_) => {}
        }
    }
    let mut out = String::new();
    for (len, contrib) in &by_length {
        writeln!(out, "length {len}: contribution {contrib:+}").unwrap();
    }
    if walls > 0 {
        writeln!(out, "wall constituents: {walls}").unwrap();
    }
    writeln!(out, "total {total}").unwrap();
    Ok(out)
}
