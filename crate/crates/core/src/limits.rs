use crate::error::{Error, Result};

/// Caps on the exponential enumerations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Largest `n` for which all DM trees are enumerated.
    pub trees: usize,
    /// Largest `n` for which all `2^(n-1)` canonical subsets are visited.
    pub subsets: usize,
    /// Largest set that is split into blocks by the partition search.
    pub partition: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { trees: 7, subsets: 20, partition: 16 }
    }
}

/// Name of the environment variable overriding [`Limits::trees`].
pub const CAP_VAR: &str = "VGIT_CAP";

impl Limits {
    /// Defaults, with the tree cap taken from `VGIT_CAP` when it is set.
    pub fn from_env() -> Result<Self> {
        let mut lim = Limits::default();
        if let Ok(v) = std::env::var(CAP_VAR) {
            lim.trees = v
                .trim()
                .parse()
                .map_err(|_| Error::invalid(format!("{CAP_VAR} must be a nonnegative integer, got {v:?}")))?;
        }
        Ok(lim)
    }

    pub fn with_trees(mut self, cap: usize) -> Self {
        self.trees = cap;
        self
    }

    pub fn with_subsets(mut self, cap: usize) -> Self {
        self.subsets = cap;
        self
    }

    pub fn check_trees(&self, n: usize) -> Result<()> {
        check("DM trees on n legs", n, self.trees)
    }

    pub fn check_subsets(&self, n: usize) -> Result<()> {
        check("subset enumeration over n marks", n, self.subsets)
    }

    pub fn check_partition(&self, size: usize) -> Result<()> {
        check("set partitions of a subset", size, self.partition)
    }
}

fn check(what: &'static str, size: usize, cap: usize) -> Result<()> {
    if size > cap {
        Err(Error::CapExceeded { what, size, cap })
    } else {
        Ok(())
    }
}
