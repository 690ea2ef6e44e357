//! The telescoping split of a Taylor binomial along aligned blocks.
//!
//! For blocks `(α_1, β_1), …, (α_m, β_m)` with `α = Σα_i`, `β = Σβ_i` and
//! `|α_i| = |β_i|`,
//!
//! ```text
//! T_{α,β} = Σ_i A_i · T^{α_{>i}} · T^{β_{<i}} · T_{α_i,β_i}
//! A_i     = f_{α<i} · f_{β>i} · g_i / G
//! ```
//!
//! where `G = gcd(f_α, f_β)` and `g_i = gcd(f_{α_i}, f_{β_i})`. The split is
//! only taken when `G` divides
//! `H_i = gcd(f_{α<i}, f_β) · gcd(f_{α≥i}, f_{β>i}) · g_i` for every `i`.

use thiserror::Error;

use crate::monomial::{Monomial, SquareFreeIdeal};
use crate::rees::{product_unchecked, taylor_unchecked, IndexSequence};

use super::cert::{CertTerm, Certificate, RuleKind};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RuleError {
    #[error("rule does not apply to this pair")]
    NotApplicable,
    #[error("gcd(f_alpha, f_beta) does not divide the block-{index} gcd product")]
    HypothesisFails { index: usize },
    #[error("blocks do not partition the pair")]
    BadPartition,
    #[error("multiplicities fall outside every case of the rule")]
    InternalCase,
}

/// Ordered blocks `(α_i, β_i)`, each a sorted index multiset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockPartition {
    pub blocks: Vec<(Vec<usize>, Vec<usize>)>,
}

impl BlockPartition {
    pub fn new(blocks: Vec<(Vec<usize>, Vec<usize>)>) -> Self {
        let blocks = blocks
            .into_iter()
            .map(|(mut a, mut b)| {
                a.sort_unstable();
                b.sort_unstable();
                (a, b)
            })
            .collect();
        BlockPartition { blocks }
    }

    fn flipped(&self) -> Self {
        BlockPartition {
            blocks: self.blocks.iter().map(|(a, b)| (b.clone(), a.clone())).collect(),
        }
    }

    fn covers(&self, alpha: &[usize], beta: &[usize]) -> bool {
        if self.blocks.len() < 2 {
            return false;
        }
        let mut sa = Vec::new();
        let mut sb = Vec::new();
        for (a, b) in &self.blocks {
            if a.is_empty() || a.len() != b.len() {
                return false;
            }
            sa.extend_from_slice(a);
            sb.extend_from_slice(b);
        }
        sa.sort_unstable();
        sb.sort_unstable();
        sa == alpha && sb == beta
    }
}

/// Builds the split certificate, checking the gcd hypothesis block by block.
/// With `swapped` the identity is taken for `(β, α)` and the subs flipped back.
pub fn rule_split(
    ideal: &SquareFreeIdeal,
    alpha: &IndexSequence,
    beta: &IndexSequence,
    part: &BlockPartition,
    rule: RuleKind,
    swapped: bool,
) -> Result<Certificate, RuleError> {
    if !part.covers(alpha.entries(), beta.entries()) {
        return Err(RuleError::BadPartition);
    }
    let (terms, cofactors) = if swapped {
        let (terms, cof) = split_terms(ideal, beta.entries(), alpha.entries(), &part.flipped())?;
        let terms = terms
            .into_iter()
            .map(|t| CertTerm {
                sub: t.sub.negate(),
                ..t
            })
            .collect();
        (terms, cof)
    } else {
        split_terms(ideal, alpha.entries(), beta.entries(), part)?
    };
    Ok(Certificate {
        target: taylor_unchecked(ideal, alpha, beta),
        terms,
        rule,
        swapped,
        cofactors,
    })
}

/// The three gcds of block `i` (0-based) and `G`, as checked by the split.
pub fn split_gcds(
    ideal: &SquareFreeIdeal,
    part: &BlockPartition,
    i: usize,
) -> (Monomial, Monomial, Monomial, Monomial) {
    let f = |v: &[usize]| product_unchecked(ideal, v);
    let cat = |range: &mut dyn Iterator<Item = &(Vec<usize>, Vec<usize>)>, left: bool| {
        let v: Vec<usize> = range
            .flat_map(|(a, b)| if left { a.clone() } else { b.clone() })
            .collect();
        f(&v)
    };
    let fa_lt = cat(&mut part.blocks[..i].iter(), true);
    let fa_ge = cat(&mut part.blocks[i..].iter(), true);
    let fb_gt = cat(&mut part.blocks[i + 1..].iter(), false);
    let fb = cat(&mut part.blocks.iter(), false);
    let fa = &fa_lt * &fa_ge;
    let (ai, bi) = &part.blocks[i];
    (
        fa_lt.gcd_unchecked(&fb),
        fa_ge.gcd_unchecked(&fb_gt),
        f(ai).gcd_unchecked(&f(bi)),
        fa.gcd_unchecked(&fb),
    )
}

fn split_terms(
    ideal: &SquareFreeIdeal,
    alpha: &[usize],
    beta: &[usize],
    part: &BlockPartition,
) -> Result<(Vec<CertTerm>, Vec<Monomial>), RuleError> {
    let f = |v: &[usize]| product_unchecked(ideal, v);
    let g_all = f(alpha).gcd_unchecked(&f(beta));
    let m = part.blocks.len();
    let mut terms = Vec::new();
    let mut cofactors = Vec::with_capacity(m);
    for i in 0..m {
        let (h1, h2, gi, _) = split_gcds(ideal, part, i);
        let h = &(&h1 * &h2) * &gi;
        let c = h
            .try_div(&g_all)
            .ok_or(RuleError::HypothesisFails { index: i + 1 })?;
        cofactors.push(c);

        let (ai, bi) = &part.blocks[i];
        if ai == bi {
            continue;
        }
        let a_lt: Vec<usize> = part.blocks[..i].iter().flat_map(|(a, _)| a.clone()).collect();
        let b_gt: Vec<usize> = part.blocks[i + 1..].iter().flat_map(|(_, b)| b.clone()).collect();
        let num = &(&f(&a_lt) * &f(&b_gt)) * &gi;
        let coef = num.quo(&g_all);
        let mut tfactor: Vec<usize> = part.blocks[i + 1..]
            .iter()
            .flat_map(|(a, _)| a.clone())
            .chain(part.blocks[..i].iter().flat_map(|(_, b)| b.clone()))
            .collect();
        tfactor.sort_unstable();
        let sub = taylor_unchecked(
            ideal,
            &IndexSequence::new(ai.clone()).expect("sorted block"),
            &IndexSequence::new(bi.clone()).expect("sorted block"),
        );
        terms.push(CertTerm { coef, tfactor, sub });
    }
    Ok((terms, cofactors))
}

/// Multiset difference; `b` must be contained in `a`. Both sorted.
pub(crate) fn minus(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut out = Vec::with_capacity(a.len());
    let mut j = 0;
    for &x in a {
        if j < b.len() && b[j] == x {
            j += 1;
        } else {
            out.push(x);
        }
    }
    debug_assert_eq!(j, b.len(), "{b:?} is not contained in {a:?}");
    out
}

pub(crate) fn repeat(i: usize, k: usize) -> Vec<usize> {
    vec![i; k]
}

pub(crate) fn runs(v: &[usize]) -> Vec<(usize, usize)> {
    let mut out: Vec<(usize, usize)> = Vec::new();
    for &x in v {
        match out.last_mut() {
            Some((y, c)) if *y == x => *c += 1,
            _ => out.push((x, 1)),
        }
    }
    out
}

pub(crate) fn multiplicity(v: &[usize], i: usize) -> usize {
    v.iter().filter(|&&x| x == i).count()
}

/// All distinct sub-multisets of `v` with exactly `k` elements, sorted.
pub(crate) fn sub_multisets(v: &[usize], k: usize) -> Vec<Vec<usize>> {
    fn go(r: &[(usize, usize)], k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == 0 {
            out.push(cur.clone());
            return;
        }
        let Some((&(x, c), rest)) = r.split_first() else {
            return;
        };
        let left: usize = rest.iter().map(|p| p.1).sum();
        for take in (0..=c.min(k)).rev() {
            if k - take > left {
                break;
            }
            cur.extend(std::iter::repeat_n(x, take));
            go(rest, k - take, cur, out);
            cur.truncate(cur.len() - take);
        }
    }
    let mut out = Vec::new();
    go(&runs(v), k, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::demos;
    use crate::reduce::verify_certificate;

    fn seq(v: &[usize]) -> IndexSequence {
        IndexSequence::from_unsorted(v.to_vec()).unwrap()
    }

    #[test]
    fn multiset_helpers() {
        assert_eq!(minus(&[1, 1, 2, 3], &[1, 3]), vec![1, 2]);
        assert_eq!(runs(&[1, 1, 4]), vec![(1, 2), (4, 1)]);
        let subs = sub_multisets(&[1, 1, 2], 2);
        assert_eq!(subs, vec![vec![1, 1], vec![1, 2]]);
        assert_eq!(sub_multisets(&[1, 2, 3], 0), vec![Vec::<usize>::new()]);
        assert!(sub_multisets(&[1], 2).is_empty());
    }

    #[test]
    fn path_split_is_exact() {
        // x1x2, x2x3, x3x4: T_{(1,3),(2,2)} peels (3,2) off
        let ideal = demos::path();
        let part = BlockPartition::new(vec![(vec![1], vec![2]), (vec![3], vec![2])]);
        let cert = rule_split(
            &ideal,
            &seq(&[1, 3]),
            &seq(&[2, 2]),
            &part,
            RuleKind::Split,
            false,
        )
        .unwrap();
        assert!(verify_certificate(&ideal, &cert));
        assert_eq!(cert.terms.len(), 2);
        assert_eq!(cert.cofactors.len(), 2);
    }

    #[test]
    fn swapped_split_flips_subs_back() {
        let ideal = demos::path();
        let part = BlockPartition::new(vec![(vec![1], vec![2]), (vec![3], vec![2])]);
        let cert = rule_split(&ideal, &seq(&[1, 3]), &seq(&[2, 2]), &part, RuleKind::Split, true).unwrap();
        assert!(cert.swapped);
        assert!(verify_certificate(&ideal, &cert));
        for t in &cert.terms {
            assert!(t.sub.alpha.entries().iter().all(|a| [1, 3].contains(a)));
        }
    }

    #[test]
    fn bad_partitions_are_rejected() {
        let ideal = demos::path();
        let whole = BlockPartition::new(vec![(vec![1, 3], vec![2, 2])]);
        let wrong = BlockPartition::new(vec![(vec![1], vec![2]), (vec![1], vec![2])]);
        for p in [whole, wrong] {
            assert_eq!(
                rule_split(&ideal, &seq(&[1, 3]), &seq(&[2, 2]), &p, RuleKind::Split, false),
                Err(RuleError::BadPartition)
            );
        }
    }

    #[test]
    fn hypothesis_failure_names_the_block() {
        // Villarreal T_{(1,3),(2,4)} has no valid split into singletons
        let ideal = demos::villarreal();
        let part = BlockPartition::new(vec![(vec![1], vec![2]), (vec![3], vec![4])]);
        let r = rule_split(
            &ideal,
            &seq(&[1, 3]),
            &seq(&[2, 4]),
            &part,
            RuleKind::Split,
            false,
        );
        assert!(matches!(r, Err(RuleError::HypothesisFails { .. })), "{r:?}");
    }
}
