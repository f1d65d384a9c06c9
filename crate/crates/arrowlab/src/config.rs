//! Search configuration shared by the decision procedures.

/// Limits and switches for the backtracking searches.
///
/// All decision procedures are deterministic; the configuration never
/// introduces randomness, it only bounds work.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchConfig {
    /// Maximum number of branching nodes a single search may expand.
    /// Exhaustion is reported as [`crate::error::BudgetExceeded`], never as a
    /// negative answer.
    pub node_budget: u64,
    /// Skip sender candidates isomorphic to a candidate whose every mark
    /// choice already failed. Sound because verification is invariant under
    /// relabeling; the first result found never depends on this switch.
    pub sender_iso_cache: bool,
    /// Largest `max_vertices` accepted by the sender search.
    pub sender_vertex_cap: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            node_budget: 100_000_000,
            sender_iso_cache: true,
            sender_vertex_cap: 8,
        }
    }
}

impl SearchConfig {
    pub fn with_budget(node_budget: u64) -> Self {
        SearchConfig {
            node_budget,
            ..SearchConfig::default()
        }
    }
}
