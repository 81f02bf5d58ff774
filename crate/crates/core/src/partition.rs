//! Range partitioning for deterministic parallel scans.
//!
//! A scan over an index space takes a [`Partition`] and visits only the
//! indices congruent to its slot. Results from any partition layout merge to
//! the same value because every merge operation used by the scans is
//! associative and the final ordering is a total order on records.

/// One slot of a range partition: indices i with i % count == index.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Partition {
    pub index: usize,
    pub count: usize,
}

impl Partition {
    pub fn new(index: usize, count: usize) -> Self {
        assert!(count >= 1 && index < count, "invalid partition slot");
        Partition { index, count }
    }

    /// The whole range as a single partition.
    pub fn whole() -> Self {
        Partition { index: 0, count: 1 }
    }

    pub fn owns(&self, linear_index: usize) -> bool {
        linear_index % self.count == self.index
    }

    /// All slots of a layout with `count` partitions.
    pub fn layout(count: usize) -> Vec<Partition> {
        (0..count).map(|i| Partition::new(i, count)).collect()
    }
}

/// Runs one job per partition on scoped threads and merges the results in
/// slot order, so the outcome is independent of scheduling.
pub fn run_partitioned<T, F>(count: usize, job: F) -> Vec<T>
where
    T: Send,
    F: Fn(Partition) -> T + Sync,
{
    assert!(count >= 1);
    if count == 1 {
        return vec![job(Partition::whole())];
    }
    let job = &job;
    std::thread::scope(|scope| {
        let handles: Vec<_> = Partition::layout(count)
            .into_iter()
            .map(|p| scope.spawn(move || job(p)))
            .collect();
        handles.into_iter().map(|h| h.join().unwrap()).collect()
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn slots_cover_everything_once() {
        let slots = Partition::layout(3);
        for i in 0..100 {
            assert_eq!(slots.iter().filter(|p| p.owns(i)).count(), 1);
        }
    }

    #[test]
    fn partitioned_run_is_ordered() {
        let out = run_partitioned(4, |p| p.index);
        assert_eq!(out, vec![0, 1, 2, 3]);
    }
}
