//! Structural invariants of late and early insertion on arbitrary hash
//! sequences.

use coalesced::oracle::NaiveTable;
use coalesced::{HashTable, Policy};
use proptest::prelude::*;

fn sequence(max_m: usize) -> impl Strategy<Value = (usize, Vec<usize>)> {
    (1..=max_m).prop_flat_map(|m| (Just(m), prop::collection::vec(1..=m, 1..=m)))
}

fn build(m: usize, policy: Policy, addresses: &[usize]) -> HashTable {
    let mut t = HashTable::new(m, policy).unwrap();
    for &h in addresses {
        t.insert(h).unwrap();
    }
    t
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn invariants_hold_after_every_insertion((m, addresses) in sequence(64)) {
        for policy in [Policy::Late, Policy::Early] {
            let mut t = HashTable::new(m, policy).unwrap();
            for &h in &addresses {
                t.insert(h).unwrap();
                prop_assert_eq!(t.check_invariants(), Ok(()));
            }
        }
    }

    #[test]
    fn both_policies_build_the_same_chains((m, addresses) in sequence(64)) {
        let late = build(m, Policy::Late, &addresses);
        let early = build(m, Policy::Early, &addresses);
        prop_assert_eq!(late.chain_partition(), early.chain_partition());
        prop_assert_eq!(late.occupied_cells(), early.occupied_cells());
        let hl = late.histogram(Policy::Late).unwrap();
        let he = early.histogram(Policy::Early).unwrap();
        prop_assert_eq!(hl.count(0), he.count(0));
        prop_assert_eq!(
            late.histogram(Policy::Unsuccessful).unwrap(),
            early.histogram(Policy::Unsuccessful).unwrap()
        );
    }

    #[test]
    fn histograms_count_every_item_and_cell((m, addresses) in sequence(64)) {
        for policy in [Policy::Late, Policy::Early] {
            let t = build(m, policy, &addresses);
            prop_assert_eq!(t.histogram(policy).unwrap().total(), addresses.len() as u64);
            let hu = t.histogram(Policy::Unsuccessful).unwrap();
            prop_assert_eq!(hu.total(), m as u64);
            prop_assert_eq!(hu.count(0), (m - addresses.len()) as u64);
        }
    }

    #[test]
    fn late_insertion_never_moves_earlier_items((m, addresses) in sequence(64)) {
        let mut t = HashTable::new(m, Policy::Late).unwrap();
        let mut before: Vec<u32> = Vec::new();
        for &h in &addresses {
            let d = t.insert(h).unwrap();
            prop_assert_eq!(&t.displacements()[..before.len()], &before[..]);
            prop_assert_eq!(*t.displacements().last().unwrap(), d);
            before = t.displacements().to_vec();
        }
    }

    #[test]
    fn early_bookkeeping_matches_a_fresh_walk((m, addresses) in sequence(64)) {
        let t = build(m, Policy::Early, &addresses);
        for i in 1..=addresses.len() {
            prop_assert_eq!(t.displacement_of(i).unwrap(), t.rewalk_displacement(i).unwrap());
        }
    }

    #[test]
    fn agrees_with_reference_implementation((m, addresses) in sequence(16)) {
        for policy in [Policy::Late, Policy::Early] {
            let mut t = HashTable::new(m, policy).unwrap();
            let mut naive = NaiveTable::new(m, policy);
            for &h in &addresses {
                t.insert(h).unwrap();
                naive.insert(h - 1);
            }
            prop_assert_eq!(coalesced::oracle::compare_tables(&t, &naive), 0);
        }
    }
}

#[test]
fn full_table_chains_cover_every_cell() {
    let t = build(5, Policy::Early, &[3, 3, 1, 3, 5]);
    let covered: usize = t.chains().iter().map(Vec::len).sum();
    assert_eq!(covered, 5);
    assert!(t.is_full());
}
