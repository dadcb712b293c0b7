//! Size caps shared by the constructions and searches.
//!
//! Every exhaustive routine checks its input against one of these limits and
//! fails with [`Error::SizeLimit`] instead of running unbounded.

use crate::error::{Error, Result};

/// Name of the environment variable read by [`Caps::from_env`].
pub const CAPS_ENV: &str = "LINSYS_CAPS";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    /// Largest field order accepted by `make_field`.
    pub field_order: u64,
    /// Largest plane order accepted by `projective_plane`.
    pub plane_order: u64,
    /// Point cap for the exact solvers.
    pub solver_points: usize,
    /// Line cap for the exact solvers.
    pub solver_lines: usize,
    /// Point cap for isomorphism and embedding searches.
    pub search_points: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Self {
            field_order: 256,
            plane_order: 16,
            solver_points: 128,
            solver_lines: 128,
            search_points: 64,
        }
    }
}

impl Caps {
    /// Parses overrides of the form `points=200,lines=200,search=80,field=512,plane=16`.
    /// Unmentioned keys keep their defaults.
    pub fn parse(spec: &str) -> Result<Self> {
        let mut caps = Caps::default();
        for item in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (key, value) = item
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("cap `{item}` is not key=value")))?;
            let value: u64 = value
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("cap `{item}` has a non-integer value")))?;
            if value == 0 {
                return Err(Error::InvalidParameter(format!("cap `{key}` must be positive")));
            }
            match key.trim() {
                "field" => caps.field_order = value,
                "plane" => caps.plane_order = value,
                "points" => caps.solver_points = value as usize,
                "lines" => caps.solver_lines = value as usize,
                "search" => caps.search_points = value as usize,
                other => return Err(Error::Parse(format!("unknown cap `{other}`"))),
            }
        }
        Ok(caps)
    }

    /// Defaults, overridden by `LINSYS_CAPS` when it is set.
    pub fn from_env() -> Result<Self> {
        match std::env::var(CAPS_ENV) {
            Ok(spec) => Self::parse(&spec),
            Err(_) => Ok(Self::default()),
        }
    }

    pub(crate) fn check(what: &'static str, size: usize, cap: usize) -> Result<()> {
        if size > cap {
            Err(Error::SizeLimit { what, size, cap })
        } else {
            Ok(())
        }
    }
}
