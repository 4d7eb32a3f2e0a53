mod common;

use std::collections::BTreeMap;
use std::sync::Arc;

use comention::store::ndjson;
use comention::time::Period;
use comention::{CoMentionRecord, RecordStore};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const POOL: &[&str] = &["Ada", "Ben", "Cleo", "Dan", "Eve", "Finn", "Gus", "Hana"];

fn random_record(rng: &mut ChaCha8Rng) -> CoMentionRecord {
    let x = rng.random_range(0..POOL.len());
    let y = (x + rng.random_range(1..POOL.len())) % POOL.len();
    let date = common::utc(2005, 1, 1) + chrono::Duration::seconds(rng.random_range(0..6 * 365 * 86_400));
    let patterns = ["", "and", "met with", "said that the", "\"quoted\" \\ text", "über café"];
    CoMentionRecord::new(
        POOL[x],
        POOL[y],
        patterns[rng.random_range(0..patterns.len())],
        rng.random_range(2..=9),
        format!("http://site{}.example/{}", rng.random_range(0..20), rng.random_range(0..1000)),
        date,
    )
    .unwrap()
}

fn record_strategy() -> impl Strategy<Value = CoMentionRecord> {
    (0..POOL.len(), 1..POOL.len(), "[a-z ,\"\\\\é]{0,12}", 2u32..20, 0i64..2_000_000_000).prop_map(|(x, dy, pattern, n, secs)| {
        let pattern = pattern.split_whitespace().take(3).collect::<Vec<_>>().join(" ");
        CoMentionRecord::new(
            POOL[x],
            POOL[(x + dy) % POOL.len()],
            &pattern,
            n,
            "http://example.com/p?q=1",
            chrono::DateTime::from_timestamp(secs, 0).unwrap(),
        )
        .unwrap()
    })
}

#[test]
fn query_matches_linear_scan() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let store = RecordStore::in_memory();
    let records: Vec<CoMentionRecord> = (0..10_000).map(|_| random_record(&mut rng)).collect();
    for chunk in records.chunks(997) {
        store.append(chunk.to_vec()).unwrap();
    }
    for _ in 0..200 {
        let persons: Vec<&str> = POOL.iter().copied().filter(|_| rng.random_bool(0.3)).collect();
        if persons.is_empty() {
            continue;
        }
        let a = common::utc(2005, 1, 1) + chrono::Duration::days(rng.random_range(0..6 * 365));
        let b = a + chrono::Duration::days(rng.random_range(1..800));
        let period = Period::new(a, b).unwrap();
        let limit = rng.random_bool(0.3).then(|| rng.random_range(1..50));
        let got: Vec<u64> = store.query_entries(&persons, &period, limit).unwrap().iter().map(|r| r.id).collect();
        let mut expected: Vec<(chrono::DateTime<chrono::Utc>, u64)> = records
            .iter()
            .enumerate()
            .filter(|(_, r)| r.crawl_date() >= a && r.crawl_date() < b && persons.iter().any(|p| r.person_a() == *p || r.person_b() == *p))
            .map(|(i, r)| (r.crawl_date(), i as u64 + 1))
            .collect();
        expected.sort();
        if let Some(l) = limit {
            expected.truncate(l);
        }
        assert_eq!(got, expected.into_iter().map(|(_, id)| id).collect::<Vec<_>>());
    }
}

#[test]
fn statistics_match_recount() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let store = RecordStore::in_memory();
    let records: Vec<CoMentionRecord> = (0..3000).map(|_| random_record(&mut rng)).collect();
    store.append(records.clone()).unwrap();
    let mut by_n: BTreeMap<u32, u64> = BTreeMap::new();
    let mut by_year: BTreeMap<i32, u64> = BTreeMap::new();
    for r in &records {
        *by_n.entry(r.n_persons()).or_default() += 1;
        *by_year.entry(chrono::Datelike::year(&r.crawl_date())).or_default() += 1;
    }
    let hist = store.weight_histogram();
    assert_eq!(hist.iter().collect::<Vec<_>>(), by_n.iter().map(|(&n, &c)| (n, 1.0 / f64::from(n), c)).collect::<Vec<_>>());
    assert_eq!(store.edges_per_year().iter().collect::<BTreeMap<_, _>>(), by_year);
    assert_eq!(hist.total(), 3000);
}

#[test]
fn concurrent_batches_are_all_present() {
    let store = Arc::new(RecordStore::in_memory());
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let batches: Vec<Vec<CoMentionRecord>> = (0..8).map(|_| (0..50).map(|_| random_record(&mut rng)).collect()).collect();
    std::thread::scope(|s| {
        for b in &batches {
            let store = Arc::clone(&store);
            s.spawn(move || {
                let ids = store.append(b.clone()).unwrap();
                // A batch is one contiguous id range.
                assert!(ids.windows(2).all(|w| w[1] == w[0] + 1));
            });
        }
    });
    let mut got: Vec<CoMentionRecord> = store.snapshot().into_iter().map(|r| r.record).collect();
    let mut expected: Vec<CoMentionRecord> = batches.concat();
    got.sort();
    expected.sort();
    assert_eq!(got, expected);
    let ids: Vec<u64> = store.snapshot().iter().map(|r| r.id).collect();
    assert_eq!(ids, (1..=400).collect::<Vec<_>>());
}

#[test]
fn directory_store_survives_reopen() {
    let dir = tempfile::tempdir().unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let records: Vec<CoMentionRecord> = (0..100).map(|_| random_record(&mut rng)).collect();
    {
        let store = RecordStore::open(dir.path()).unwrap();
        store.append(records[..60].to_vec()).unwrap();
        store.append(records[60..].to_vec()).unwrap();
    }
    let store = RecordStore::open(dir.path()).unwrap();
    assert_eq!(store.snapshot().into_iter().map(|r| r.record).collect::<Vec<_>>(), records);
    store.append(vec![records[0].clone()]).unwrap();
    assert_eq!(RecordStore::open(dir.path()).unwrap().len(), 101);
}

proptest! {
    #[test]
    fn ndjson_round_trips(records in prop::collection::vec(record_strategy(), 0..40)) {
        let mut bytes = Vec::new();
        ndjson::write_records(&mut bytes, &records).unwrap();
        let back = ndjson::read_records(bytes.as_slice()).unwrap();
        prop_assert_eq!(&back, &records);
        let mut again = Vec::new();
        ndjson::write_records(&mut again, &back).unwrap();
        prop_assert_eq!(again, bytes);
    }

    #[test]
    fn export_import_is_multiset_equal(records in prop::collection::vec(record_strategy(), 0..40)) {
        let a = RecordStore::in_memory();
        a.append(records.clone()).unwrap();
        let mut out = Vec::new();
        a.export(&mut out).unwrap();
        let b = RecordStore::in_memory();
        // Line order does not matter.
        let mut lines: Vec<&str> = std::str::from_utf8(&out).unwrap().lines().collect();
        lines.reverse();
        b.import(lines.join("\n").as_bytes()).unwrap();
        let mut x: Vec<_> = a.snapshot().into_iter().map(|r| r.record).collect();
        let mut y: Vec<_> = b.snapshot().into_iter().map(|r| r.record).collect();
        x.sort();
        y.sort();
        prop_assert_eq!(x, y);
    }
}
