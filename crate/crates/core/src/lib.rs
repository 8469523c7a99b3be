pub mod chains;
pub mod cli;
pub mod exact;
pub mod formal;
pub mod graded;
pub mod lie;
