//! Batch front end over `metacyclic-core`: enumeration of the metacyclic
//! groups up to an order bound, the verification suite, and the output
//! formats used by the `metacyclic` binary.

pub mod checks;
pub mod records;

use anyhow::bail;
use metacyclic_core::invariants::{construct_group, valid_tuples};

use crate::checks::MAX_ORDER;
use crate::records::{GroupRecord, McinvRecord, PresentationRecord};

/// One canonical presentation per isomorphism class of order at most
/// `max_order`, sorted by `(order, m, n, s, delta generator)`.
pub fn enumerate(max_order: u64) -> anyhow::Result<Vec<GroupRecord>> {
    if max_order > MAX_ORDER {
        bail!("max order {max_order} exceeds the supported bound {MAX_ORDER}");
    }
    let mut tuples = valid_tuples(max_order);
    tuples.sort();
    tuples.dedup();
    tuples
        .iter()
        .map(|t| {
            let g = construct_group(t)?;
            Ok(GroupRecord {
                order: t.order(),
                presentation: PresentationRecord::from(g.presentation()),
                mcinv: McinvRecord::from(t),
            })
        })
        .collect()
}
