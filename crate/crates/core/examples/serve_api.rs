//! Serves the election store over HTTP.
//!
//! ```bash
//! cargo run -p comention --example serve_api -- 127.0.0.1:8080
//! curl 'http://127.0.0.1:8080/api/persons?q=b'
//! curl -d '{"persons":["Barack Obama"],"from":"2008-05-01","to":"2009-05-01"}' http://127.0.0.1:8080/api/graph/static
//! ```

use std::sync::Arc;

use comention::service::{self, Api};
use comention::{ingest, synth, IngestOptions, RecordStore};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let addr = std::env::args().nth(1).unwrap_or_else(|| "127.0.0.1:8080".into());
    let dir = std::env::temp_dir().join(format!("comention-serve-{}", std::process::id()));
    std::fs::create_dir_all(&dir)?;
    let warc = dir.join("election.warc");
    synth::write_warc(&synth::election_pages(), std::fs::File::create(&warc)?, false)?;
    let store = RecordStore::in_memory();
    ingest(&[warc], &synth::election_dictionary(), &store, &IngestOptions::default());
    std::fs::remove_dir_all(&dir)?;

    let api = Api::new(Arc::new(store));
    tokio::runtime::Runtime::new()?.block_on(async move {
        let listener = tokio::net::TcpListener::bind(&addr).await?;
        eprintln!("listening on http://{}", listener.local_addr()?);
        service::serve(listener, api, None, async {
            let _ = tokio::signal::ctrl_c().await;
        })
        .await
    })?;
    Ok(())
}
