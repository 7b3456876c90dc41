//! Path-superposition embeddings, the streamed executor and its resource ledger.

mod estimate;
mod executor;
mod path;

pub use estimate::{application_rows, resource_estimate, rows_to_table, CostReport, Factor, TableRow};
pub use executor::{
    predicted_peak_live_dim, streamed_apply, streamed_apply_with, Phase, ResourceLedger, Schedule, ScheduleStep,
    StreamMode, StreamOptions, StreamOutput,
};
pub use path::{embedding_isometry, path_embedding, path_operator, PathState};
