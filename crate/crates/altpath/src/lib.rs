//! File formats, batch sweeps and reporting around [`altpath_core`].

pub mod audit;
pub mod io;
pub mod report;
pub mod sweep;

pub use io::{parse_digraph6, parse_edge_list, write_digraph6, write_edge_list, Format, FormatError};
pub use report::{emit_report, parse_csv, write_report, InstanceRecord, OutFormat, OutcomeJson};
pub use sweep::{
    run_blowup_suite, run_corollary_sweep, run_oddcase_sweep, run_sweep, run_theorem_sweep, SweepConfig, SweepError,
    SweepMode, SweepReport,
};
