use std::env;

/// Enumeration limits shared by every cap-guarded operation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Caps {
    /// Maximum number of vertices enumerated densely (q^m).
    pub vertices: usize,
    /// Maximum number of group elements produced by closure.
    pub group: usize,
    /// Maximum orbit length (vertex or set orbits).
    pub orbit: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            vertices: 10_000_000,
            group: 10_000_000,
            orbit: 10_000_000,
        }
    }
}

impl Caps {
    /// Defaults, overridden by `ELUSIVE_VERTEX_CAP`, `ELUSIVE_GROUP_CAP` and
    /// `ELUSIVE_ORBIT_CAP` when those hold positive integers.
    pub fn from_env() -> Self {
        let mut caps = Caps::default();
        let read = |key: &str| {
            env::var(key)
                .ok()
                .and_then(|v| v.trim().parse::<usize>().ok())
                .filter(|&v| v > 0)
        };
        if let Some(v) = read("ELUSIVE_VERTEX_CAP") {
            caps.vertices = v;
        }
        if let Some(v) = read("ELUSIVE_GROUP_CAP") {
            caps.group = v;
        }
        if let Some(v) = read("ELUSIVE_ORBIT_CAP") {
            caps.orbit = v;
        }
        caps
    }
}
