//! File formats, reports and the verification suite behind the `orbiqc`
//! command-line tool.

pub mod ingest;
pub mod render;
pub mod report;
pub mod verify;
