//! Dataset files and report rendering.

mod dataset;
mod report;

pub use dataset::{load_dataset, load_manifest, write_dataset, Dataset, DatasetManifest, Preprocessing};
pub use report::{parse_report, render_json, render_markdown};
