//! Hashing with coalesced chains.
//!
//! Items are placed into a table of `m` cells. An item whose hash address is
//! empty is stored there; otherwise it goes to the empty cell with the largest
//! index, which is linked into the chain running through the hash address.
//! Under [`Policy::Late`] the new cell is appended after the chain's tail,
//! under [`Policy::Early`] it is spliced in directly after the hash address.
//!
//! Cell indices, hash addresses and item indices are 1-based in the public
//! API. Items carry no keys; the table only records where each item went and
//! its current displacement.

use crate::error::{Error, Result};
use crate::histogram::DisplacementHistogram;
use crate::policy::Policy;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
struct Slot {
    // 0-based cell index of the successor, `None` for a null link.
    link: Option<usize>,
    // 0-based item index.
    item: Option<usize>,
}

/// Public view of one cell, with 1-based indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Cell {
    pub occupied: bool,
    pub link: Option<usize>,
    pub item_id: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HashTable {
    policy: Policy,
    slots: Vec<Slot>,
    /// 1-based; every cell with a larger index is occupied.
    rover: usize,
    hashes: Vec<usize>,
    location: Vec<usize>,
    displacements: Vec<u32>,
    // Per-cell insertion stamp, used to walk a chain suffix under early insertion.
    stamp: Vec<usize>,
}

impl HashTable {
    pub fn new(m: usize, policy: Policy) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidSize);
        }
        if !policy.is_insertion() {
            return Err(Error::InvalidPolicy(policy));
        }
        let stamp = match policy {
            Policy::Early => vec![0; m],
            _ => Vec::new(),
        };
        Ok(Self {
            policy,
            slots: vec![Slot::default(); m],
            rover: m,
            hashes: Vec::new(),
            location: Vec::new(),
            displacements: Vec::new(),
            stamp,
        })
    }

    /// Builds a table by inserting `addresses` (1-based) in order.
    pub fn from_addresses(m: usize, policy: Policy, addresses: &[usize]) -> Result<Self> {
        let mut table = Self::new(m, policy)?;
        for &h in addresses {
            table.insert(h)?;
        }
        Ok(table)
    }

    pub fn policy(&self) -> Policy {
        self.policy
    }

    /// Number of cells `m`.
    pub fn capacity(&self) -> usize {
        self.slots.len()
    }

    /// Number of items `n`.
    pub fn len(&self) -> usize {
        self.hashes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.hashes.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.len() == self.capacity()
    }

    pub fn rover(&self) -> usize {
        self.rover
    }

    pub fn load_factor(&self) -> f64 {
        self.len() as f64 / self.capacity() as f64
    }

    fn check_address(&self, addr: usize) -> Result<usize> {
        if addr == 0 || addr > self.capacity() {
            return Err(Error::InvalidAddress {
                addr,
                m: self.capacity(),
            });
        }
        Ok(addr - 1)
    }

    fn check_item(&self, item: usize) -> Result<usize> {
        if item == 0 || item > self.len() {
            return Err(Error::InvalidItem {
                item,
                n: self.len(),
            });
        }
        Ok(item - 1)
    }

    pub fn cell(&self, j: usize) -> Result<Cell> {
        let slot = self.slots[self.check_address(j)?];
        Ok(Cell {
            occupied: slot.item.is_some(),
            link: slot.link.map(|c| c + 1),
            item_id: slot.item.map(|i| i + 1),
        })
    }

    /// Largest index of an empty cell.
    ///
    /// The rover only moves downwards, so the scans over a table's whole
    /// lifetime cost `O(m)` in total.
    pub fn find_free_cell(&mut self) -> Result<usize> {
        if self.is_full() {
            return Err(Error::TableFull { m: self.capacity() });
        }
        while self.slots[self.rover - 1].item.is_some() {
            self.rover -= 1;
        }
        Ok(self.rover)
    }

    /// Inserts the next item with hash address `h` and returns its
    /// displacement at insertion time.
    pub fn insert(&mut self, h: usize) -> Result<u32> {
        let home = self.check_address(h)?;
        if self.is_full() {
            return Err(Error::TableFull { m: self.capacity() });
        }
        let item = self.len();

        if self.slots[home].item.is_none() {
            self.place(item, home, home, 0);
            return Ok(0);
        }

        let free = self.find_free_cell()? - 1;
        let displacement = match self.policy {
            Policy::Late => {
                let mut tail = home;
                let mut links = 0u32;
                while let Some(next) = self.slots[tail].link {
                    tail = next;
                    links += 1;
                }
                self.slots[tail].link = Some(free);
                links + 1
            }
            Policy::Early => {
                self.bump_suffix(home, item + 1);
                self.slots[free].link = self.slots[home].link;
                self.slots[home].link = Some(free);
                1
            }
            Policy::Unsuccessful => unreachable!("constructor rejects U"),
        };
        self.place(item, home, free, displacement);
        Ok(displacement)
    }

    /// Every item stored after `home` whose own hash address lies at or
    /// before `home` in the chain is pushed one link further by a splice
    /// behind `home`.
    fn bump_suffix(&mut self, home: usize, epoch: usize) {
        let mut cursor = self.slots[home].link;
        while let Some(c) = cursor {
            self.stamp[c] = epoch;
            let x = self.slots[c].item.expect("chain cells are occupied");
            if self.stamp[self.hashes[x]] != epoch {
                self.displacements[x] += 1;
            }
            cursor = self.slots[c].link;
        }
    }

    fn place(&mut self, item: usize, home: usize, cell: usize, displacement: u32) {
        debug_assert_eq!(item, self.hashes.len());
        self.slots[cell].item = Some(item);
        self.hashes.push(home);
        self.location.push(cell);
        self.displacements.push(displacement);
    }

    /// Current displacement of item `i` (1-based).
    pub fn displacement_of(&self, i: usize) -> Result<u32> {
        Ok(self.displacements[self.check_item(i)?])
    }

    pub fn displacements(&self) -> &[u32] {
        &self.displacements
    }

    /// Hash address (1-based) of item `i`.
    pub fn hash_address(&self, i: usize) -> Result<usize> {
        Ok(self.hashes[self.check_item(i)?] + 1)
    }

    /// Cell (1-based) holding item `i`.
    pub fn location_of(&self, i: usize) -> Result<usize> {
        Ok(self.location[self.check_item(i)?] + 1)
    }

    /// Displacement of item `i` obtained by walking the links from its hash
    /// address, independent of the bookkeeping done by [`insert`](Self::insert).
    pub fn rewalk_displacement(&self, i: usize) -> Result<u32> {
        let idx = self.check_item(i)?;
        let target = self.location[idx];
        let mut cell = self.hashes[idx];
        let mut links = 0u32;
        while cell != target {
            cell = self.slots[cell].link.ok_or_else(|| {
                Error::NumericFailure(format!("item {i} is not reachable from its hash address"))
            })?;
            links += 1;
        }
        Ok(links)
    }

    /// Number of occupied cells met by an unsuccessful search starting at `j`.
    pub fn unsuccessful_search_cost(&self, j: usize) -> Result<u32> {
        let start = self.check_address(j)?;
        Ok(self.cost_from(start))
    }

    fn cost_from(&self, start: usize) -> u32 {
        if self.slots[start].item.is_none() {
            return 0;
        }
        let mut cost = 1;
        let mut cell = start;
        while let Some(next) = self.slots[cell].link {
            cell = next;
            cost += 1;
        }
        cost
    }

    /// Histogram `n_k` of displacements under the table's own policy, or of
    /// unsuccessful-search costs over all `m` start addresses.
    pub fn histogram(&self, which: Policy) -> Result<DisplacementHistogram> {
        match which {
            Policy::Unsuccessful => {
                let mut h = DisplacementHistogram::new();
                h.record_n(0, (self.capacity() - self.len()) as u64);
                // A chain of length l has exactly one start with each cost 1..=l.
                for chain in self.chains_internal() {
                    for k in 1..=chain.len() {
                        h.record(k);
                    }
                }
                Ok(h)
            }
            p if p != self.policy => Err(Error::InvalidPolicy(p)),
            _ if self.is_empty() => Err(Error::EmptyTable),
            _ => Ok(DisplacementHistogram::from_values(
                self.displacements.iter().copied(),
            )),
        }
    }

    fn chains_internal(&self) -> Vec<Vec<usize>> {
        let mut is_target = vec![false; self.capacity()];
        for slot in &self.slots {
            if let Some(next) = slot.link {
                is_target[next] = true;
            }
        }
        let mut chains = Vec::new();
        for (head, slot) in self.slots.iter().enumerate() {
            if slot.item.is_none() || is_target[head] {
                continue;
            }
            let mut chain = vec![head];
            let mut cell = head;
            while let Some(next) = self.slots[cell].link {
                chain.push(next);
                cell = next;
            }
            chains.push(chain);
        }
        chains
    }

    /// Chains as 1-based cell lists, each from head to tail, ordered by head.
    pub fn chains(&self) -> Vec<Vec<usize>> {
        self.chains_internal()
            .into_iter()
            .map(|c| c.into_iter().map(|x| x + 1).collect())
            .collect()
    }

    /// Chains as sets of cells (each sorted, list sorted), so that two tables
    /// can be compared irrespective of chain order.
    pub fn chain_partition(&self) -> Vec<Vec<usize>> {
        let mut parts: Vec<Vec<usize>> = self
            .chains()
            .into_iter()
            .map(|mut c| {
                c.sort_unstable();
                c
            })
            .collect();
        parts.sort();
        parts
    }

    pub fn occupied_cells(&self) -> Vec<usize> {
        (0..self.capacity())
            .filter(|&c| self.slots[c].item.is_some())
            .map(|c| c + 1)
            .collect()
    }

    /// Structural self-check. Returns a description of the first violation.
    pub fn check_invariants(&self) -> std::result::Result<(), String> {
        let m = self.capacity();
        let n = self.len();
        let occupied = self.slots.iter().filter(|s| s.item.is_some()).count();
        if occupied != n {
            return Err(format!("{occupied} occupied cells but {n} items"));
        }
        let mut indegree = vec![0u32; m];
        for (c, slot) in self.slots.iter().enumerate() {
            match (slot.item, slot.link) {
                (None, Some(_)) => return Err(format!("empty cell {} has a link", c + 1)),
                (_, Some(next)) => {
                    if self.slots[next].item.is_none() {
                        return Err(format!("cell {} links to empty cell {}", c + 1, next + 1));
                    }
                    indegree[next] += 1;
                    if indegree[next] > 1 {
                        return Err(format!("cell {} has two predecessors", next + 1));
                    }
                }
                _ => {}
            }
        }
        // With in-degree <= 1, every cell reachable from a head lies on a simple
        // path; any occupied cell not reached that way sits on a cycle.
        let chains = self.chains_internal();
        let covered: usize = chains.iter().map(Vec::len).sum();
        if covered != n {
            return Err(format!(
                "chains cover {covered} cells, expected {n} (cycle?)"
            ));
        }
        if self.rover < m && self.slots[self.rover..].iter().any(|s| s.item.is_none()) {
            return Err("empty cell above the rover".to_string());
        }
        let mut chain_len = vec![0usize; m];
        for chain in &chains {
            for &c in chain {
                chain_len[c] = chain.len();
            }
        }
        for i in 0..n {
            let (home, loc) = (self.hashes[i], self.location[i]);
            if self.slots[loc].item != Some(i) {
                return Err(format!("item {} is not stored at its recorded cell", i + 1));
            }
            let walked = self.rewalk_displacement(i + 1).map_err(|e| e.to_string())?;
            if walked != self.displacements[i] {
                return Err(format!(
                    "item {} records displacement {} but walks {}",
                    i + 1,
                    self.displacements[i],
                    walked
                ));
            }
            if walked as usize >= chain_len[home] {
                return Err(format!("item {} displaced beyond its chain", i + 1));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table(m: usize, policy: Policy, hs: &[usize]) -> HashTable {
        HashTable::from_addresses(m, policy, hs).unwrap()
    }

    #[test]
    fn new_table_is_empty() {
        let t = HashTable::new(8, Policy::Late).unwrap();
        assert_eq!(t.capacity(), 8);
        assert_eq!(t.rover(), 8);
        assert!(t.is_empty());
        for j in 1..=8 {
            let c = t.cell(j).unwrap();
            assert!(!c.occupied);
            assert_eq!(c.link, None);
        }
        assert_eq!(HashTable::new(1, Policy::Early).unwrap().capacity(), 1);
    }

    #[test]
    fn new_table_rejects_bad_arguments() {
        assert_eq!(HashTable::new(0, Policy::Late), Err(Error::InvalidSize));
        assert_eq!(
            HashTable::new(4, Policy::Unsuccessful),
            Err(Error::InvalidPolicy(Policy::Unsuccessful))
        );
    }

    #[test]
    fn free_cell_is_largest_empty_index() {
        let mut t = HashTable::new(8, Policy::Late).unwrap();
        assert_eq!(t.find_free_cell().unwrap(), 8);
        t.insert(8).unwrap();
        t.insert(7).unwrap();
        assert_eq!(t.find_free_cell().unwrap(), 6);

        let mut full = table(2, Policy::Late, &[1, 1]);
        assert_eq!(full.find_free_cell(), Err(Error::TableFull { m: 2 }));
    }

    #[test]
    fn insert_into_empty_cell() {
        let mut t = HashTable::new(4, Policy::Late).unwrap();
        assert_eq!(t.insert(2).unwrap(), 0);
        assert_eq!(t.cell(2).unwrap().item_id, Some(1));
    }

    #[test]
    fn late_insertion_trace() {
        let mut t = HashTable::new(4, Policy::Late).unwrap();
        let returned: Vec<u32> = [2, 2, 2].iter().map(|&h| t.insert(h).unwrap()).collect();
        assert_eq!(returned, vec![0, 1, 2]);
        assert_eq!(t.displacements(), &[0, 1, 2]);
        assert_eq!(
            (1..=3)
                .map(|i| t.location_of(i).unwrap())
                .collect::<Vec<_>>(),
            vec![2, 4, 3]
        );
        assert_eq!(t.chains(), vec![vec![2, 4, 3]]);
    }

    #[test]
    fn early_insertion_trace() {
        let t = table(4, Policy::Early, &[2, 2, 2]);
        assert_eq!(t.displacements(), &[0, 2, 1]);
        assert_eq!(t.displacement_of(2).unwrap(), 2);
        assert_eq!(t.chains(), vec![vec![2, 3, 4]]);
        t.check_invariants().unwrap();
    }

    #[test]
    fn early_splice_keeps_items_hashed_inside_the_suffix() {
        // Chain 4 -> 3 after two inserts; item 3 hashes to 3, the suffix cell,
        // so a later splice behind 4 must not move it relative to its own home.
        let t = table(4, Policy::Early, &[4, 4, 3, 4]);
        t.check_invariants().unwrap();
        for i in 1..=4 {
            assert_eq!(
                t.displacement_of(i).unwrap(),
                t.rewalk_displacement(i).unwrap()
            );
        }
    }

    #[test]
    fn insert_errors() {
        let mut t = HashTable::new(2, Policy::Late).unwrap();
        assert_eq!(t.insert(0), Err(Error::InvalidAddress { addr: 0, m: 2 }));
        assert_eq!(t.insert(3), Err(Error::InvalidAddress { addr: 3, m: 2 }));
        t.insert(1).unwrap();
        t.insert(1).unwrap();
        assert_eq!(t.insert(1), Err(Error::TableFull { m: 2 }));
    }

    #[test]
    fn unsuccessful_costs() {
        let t = table(4, Policy::Late, &[2, 2, 2]);
        assert_eq!(t.unsuccessful_search_cost(1).unwrap(), 0);
        assert_eq!(t.unsuccessful_search_cost(3).unwrap(), 1);
        assert_eq!(t.unsuccessful_search_cost(2).unwrap(), 3);
        assert_eq!(t.unsuccessful_search_cost(4).unwrap(), 2);
        assert!(t.unsuccessful_search_cost(5).is_err());
    }

    #[test]
    fn displacement_queries() {
        let t = table(4, Policy::Late, &[2, 2, 2]);
        assert_eq!(t.displacement_of(1).unwrap(), 0);
        assert_eq!(
            t.displacement_of(0),
            Err(Error::InvalidItem { item: 0, n: 3 })
        );
        assert_eq!(
            t.displacement_of(4),
            Err(Error::InvalidItem { item: 4, n: 3 })
        );
        let e = table(4, Policy::Early, &[3, 1]);
        assert_eq!(e.displacement_of(2).unwrap(), 0);
    }

    #[test]
    fn histograms() {
        let empty = HashTable::new(5, Policy::Late).unwrap();
        assert_eq!(
            empty.histogram(Policy::Unsuccessful).unwrap().counts(),
            &[5]
        );
        assert_eq!(empty.histogram(Policy::Late), Err(Error::EmptyTable));

        let t = table(4, Policy::Late, &[2, 2, 2]);
        assert_eq!(t.histogram(Policy::Late).unwrap().counts(), &[1, 1, 1]);
        assert_eq!(
            t.histogram(Policy::Unsuccessful).unwrap().counts(),
            &[1, 1, 1, 1]
        );
        assert_eq!(
            t.histogram(Policy::Early),
            Err(Error::InvalidPolicy(Policy::Early))
        );
    }

    #[test]
    fn full_table_is_supported() {
        let t = table(4, Policy::Late, &[2, 2, 2, 1]);
        assert_eq!(t.displacements(), &[0, 1, 2, 0]);
        assert!(t.is_full());
        let u = t.histogram(Policy::Unsuccessful).unwrap();
        assert_eq!(u.count(0), 0);
        assert_eq!(u.total(), 4);
    }
}
