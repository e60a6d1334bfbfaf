/// Resource limits shared by the search and linear-algebra routines.
///
/// Every cap fails loudly with [`crate::Error::Resource`] instead of silently
/// exhausting memory or time.
#[derive(Debug, Clone)]
pub struct Budget {
    /// Largest vertex count accepted by clique enumeration.
    /// The bitset representation gives a hard ceiling of 64.
    pub max_vertices: usize,
    /// Largest tuple-basis size a tensor power may allocate,
    /// counted before degree filtering.
    pub max_tensor_basis: usize,
    /// Largest number of clique multisets the exhaustive oracle may visit.
    pub max_oracle_tuples: u128,
    /// Run degreewise linear algebra on a thread pool.
    /// Results are guaranteed identical to the sequential run.
    pub parallel: bool,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_vertices: 64,
            max_tensor_basis: 1_000_000,
            max_oracle_tuples: 10_000_000,
            parallel: false,
        }
    }
}

impl Budget {
    pub fn with_parallel(mut self, parallel: bool) -> Self {
        self.parallel = parallel;
        self
    }

    pub fn with_max_tensor_basis(mut self, cap: usize) -> Self {
        self.max_tensor_basis = cap;
        self
    }
}
