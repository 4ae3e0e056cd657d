//! Benchmark languages and labeled, length-stratified datasets.
//!
//! Datasets are JSONL: a manifest line
//! `{"type":"manifest","language":...,"seed":...,"generator_version":...,"warnings":[...],...}`
//! followed by one `{"s":"...","label":0|1,"len":n}` record per line.

mod generate;
mod io;
mod registry;

pub use generate::{generate_split, Balance, DatasetRecord, Split};
pub use io::{read_dataset, write_dataset, Dataset, Manifest, GENERATOR_VERSION};
pub use registry::{benchmark, benchmarks, BenchmarkLanguage, FragmentClass, BENCHMARK_IDS};
