use serde::{Deserialize, Serialize};

/// Which earlier positions a query position may attend to. Both kinds are
/// strictly causal: position `n` never sees itself.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", content = "k", rename_all = "lowercase")]
pub enum Mask {
    /// `m < n`.
    Global,
    /// `max(1, n − k) ≤ m < n`.
    Local(usize),
}

impl Mask {
    /// Whether query position `n` attends to key position `m` (both 1-based).
    pub fn allows(&self, n: usize, m: usize) -> bool {
        match *self {
            Mask::Global => m < n,
            Mask::Local(k) => m < n && m + k >= n,
        }
    }

    /// 1-based key positions visible from `n`, in increasing order.
    pub fn window(&self, n: usize) -> std::ops::Range<usize> {
        match *self {
            Mask::Global => 1..n,
            Mask::Local(k) => n.saturating_sub(k).max(1)..n,
        }
    }

    /// `len × len` 0/1 matrix; entry `[n-1][m-1]` is 1 iff `n` attends to `m`.
    pub fn materialize(&self, len: usize) -> Vec<Vec<u8>> {
        (1..=len)
            .map(|n| (1..=len).map(|m| u8::from(self.allows(n, m))).collect())
            .collect()
    }
}

impl std::fmt::Display for Mask {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Mask::Global => f.write_str("global"),
            Mask::Local(k) => write!(f, "local({k})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn local_window() {
        let m = Mask::Local(2);
        let visible: Vec<usize> = (1..=6).filter(|&j| m.allows(4, j)).collect();
        assert_eq!(visible, vec![2, 3]);
        assert_eq!(m.window(4), 2..4);
        assert_eq!(m.window(1), 1..1);
        assert_eq!(Mask::Local(1).window(1), 1..1);
    }

    #[test]
    fn materializations_match_definitions() {
        for len in 0..=65 {
            let g = Mask::Global.materialize(len);
            for k in [1, 2, 4] {
                let l = Mask::Local(k).materialize(len);
                for n in 1..=len {
                    for m in 1..=len {
                        assert_eq!(g[n - 1][m - 1] == 1, m < n);
                        assert_eq!(l[n - 1][m - 1] == 1, n.saturating_sub(k).max(1) <= m && m < n);
                        assert_eq!(Mask::Local(k).window(n).contains(&m), l[n - 1][m - 1] == 1);
                    }
                }
            }
        }
    }

    #[test]
    fn json_form() {
        assert_eq!(serde_json::to_string(&Mask::Local(3)).unwrap(), r#"{"kind":"local","k":3}"#);
        assert_eq!(serde_json::to_string(&Mask::Global).unwrap(), r#"{"kind":"global"}"#);
    }
}
