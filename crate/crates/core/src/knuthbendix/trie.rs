/// Dense trie over a small alphabet of slots. Node 0 is the root, so a zero
/// child pointer means "absent".
#[derive(Clone, Debug)]
pub(crate) struct Trie {
    width: usize,
    next: Vec<u32>,
    terminal: Vec<u32>,
}

pub(crate) const NO_RULE: u32 = u32::MAX;

impl Trie {
    pub fn new(width: usize) -> Self {
        Trie {
            width,
            next: vec![0; width],
            terminal: vec![NO_RULE],
        }
    }

    pub fn nodes(&self) -> usize {
        self.terminal.len()
    }

    #[inline]
    pub fn child(&self, node: u32, slot: usize) -> u32 {
        self.next[node as usize * self.width + slot]
    }

    #[inline]
    pub fn terminal(&self, node: u32) -> u32 {
        self.terminal[node as usize]
    }

    pub fn insert(&mut self, slots: impl Iterator<Item = usize>, id: u32) {
        let mut node = 0u32;
        for s in slots {
            let c = self.child(node, s);
            node = if c == 0 {
                let new = self.terminal.len() as u32;
                self.terminal.push(NO_RULE);
                self.next.extend(std::iter::repeat_n(0, self.width));
                self.next[node as usize * self.width + s] = new;
                new
            } else {
                c
            };
        }
        self.terminal[node as usize] = id;
    }

    /// Clears the terminal mark if it belongs to `id`.
    pub fn remove(&mut self, slots: impl Iterator<Item = usize>, id: u32) {
        let mut node = 0u32;
        for s in slots {
            node = self.child(node, s);
            if node == 0 {
                return;
            }
        }
        if self.terminal[node as usize] == id {
            self.terminal[node as usize] = NO_RULE;
        }
    }

    /// Follows `slots` from the root. Returns the node reached, or `None`
    /// if the path leaves the trie. Terminals strictly inside the path are
    /// reported through `on_terminal(depth, id)`.
    pub fn walk(
        &self,
        slots: impl Iterator<Item = usize>,
        mut on_terminal: impl FnMut(usize, u32),
    ) -> Option<u32> {
        let mut node = 0u32;
        for (d, s) in slots.enumerate() {
            if d > 0 && self.terminal(node) != NO_RULE {
                on_terminal(d, self.terminal(node));
            }
            node = self.child(node, s);
            if node == 0 {
                return None;
            }
        }
        Some(node)
    }

    /// Every terminal in the subtree below `node` (excluding `node` itself).
    pub fn for_each_below(&self, node: u32, mut f: impl FnMut(u32)) {
        let mut stack: Vec<u32> = Vec::new();
        let push_children = |n: u32, stack: &mut Vec<u32>| {
            let base = n as usize * self.width;
            for s in (0..self.width).rev() {
                let c = self.next[base + s];
                if c != 0 {
                    stack.push(c);
                }
            }
        };
        push_children(node, &mut stack);
        while let Some(n) = stack.pop() {
            let t = self.terminal(n);
            if t != NO_RULE {
                f(t);
            }
            push_children(n, &mut stack);
        }
    }
}
