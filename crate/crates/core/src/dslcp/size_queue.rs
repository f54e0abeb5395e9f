//! Buckets indexed by size, with O(1) updates for ±1 size changes and O(1)
//! amortized access to the largest bucket.

#[derive(Debug, Default, Clone)]
pub(crate) struct SizeQueue {
    lists: Vec<Vec<u32>>,
    /// Position of each bucket inside its size list.
    pos: Vec<u32>,
    size_of: Vec<u32>,
    max: usize,
}

const ABSENT: u32 = u32::MAX;

impl SizeQueue {
    pub fn clear(&mut self) {
        self.lists.clear();
        self.pos.clear();
        self.size_of.clear();
        self.max = 0;
    }

    fn ensure(&mut self, bucket: u32, size: usize) {
        if self.lists.len() <= size {
            self.lists.resize_with(size + 1, Vec::new);
        }
        if self.pos.len() <= bucket as usize {
            self.pos.resize(bucket as usize + 1, ABSENT);
            self.size_of.resize(bucket as usize + 1, 0);
        }
    }

    pub fn insert(&mut self, bucket: u32, size: usize) {
        self.ensure(bucket, size);
        debug_assert_eq!(self.pos[bucket as usize], ABSENT);
        self.pos[bucket as usize] = self.lists[size].len() as u32;
        self.size_of[bucket as usize] = size as u32;
        self.lists[size].push(bucket);
        if size > self.max {
            self.max = size;
        }
    }

    pub fn remove(&mut self, bucket: u32) {
        let b = bucket as usize;
        let size = self.size_of[b] as usize;
        let p = self.pos[b] as usize;
        let list = &mut self.lists[size];
        list.swap_remove(p);
        if p < list.len() {
            let moved = list[p];
            self.pos[moved as usize] = p as u32;
        }
        self.pos[b] = ABSENT;
        while self.max > 0 && self.lists[self.max].is_empty() {
            self.max -= 1;
        }
    }

    pub fn update(&mut self, bucket: u32, size: usize) {
        self.remove(bucket);
        self.insert(bucket, size);
    }

    pub fn largest(&self) -> Option<(u32, usize)> {
        self.lists
            .get(self.max)
            .and_then(|l| l.last())
            .map(|&b| (b, self.max))
    }

    pub fn size(&self, bucket: u32) -> usize {
        self.size_of[bucket as usize] as usize
    }

    pub fn contains(&self, bucket: u32) -> bool {
        self.pos.get(bucket as usize).is_some_and(|&p| p != ABSENT)
    }

    pub fn len(&self) -> usize {
        self.lists.iter().map(Vec::len).sum()
    }
}
