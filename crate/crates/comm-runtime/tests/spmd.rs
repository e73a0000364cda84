//! End-to-end exercises of worker groups: barriers establishing
//! visibility, two-sided exchanges, one-sided transfers from passive
//! owners, and failure containment.

use comm_runtime::{spawn_spmd, CommError, Distribution, SharedArray2D, SpmdError};
use std::sync::atomic::{AtomicU64, Ordering};
use std::time::Duration;

#[test]
fn results_come_back_in_rank_order() {
    let report = spawn_spmd::<_, CommError, _>(4, |ctx| Ok(ctx.id() * 10)).unwrap();
    assert_eq!(report.results, vec![0, 10, 20, 30]);
    assert_eq!(report.sends, vec![0; 4]);
    assert_eq!(report.recvs, vec![0; 4]);
    assert_eq!(report.barriers, vec![0; 4]);
}

#[test]
fn single_worker_groups_work() {
    let report = spawn_spmd::<_, CommError, _>(1, |ctx| {
        ctx.barrier()?;
        ctx.send_async(0, 1, &[2.5])?;
        let mut buf = [0.0];
        ctx.recv_into(0, 1, &mut buf)?;
        Ok(buf[0])
    })
    .unwrap();
    assert_eq!(report.results, vec![2.5]);
    assert_eq!(report.sends, vec![1]);
    assert_eq!(report.recvs, vec![1]);
    assert_eq!(report.barriers, vec![1]);
}

#[test]
fn barrier_publishes_writes_between_workers() {
    // Worker w fills slot w, everyone meets, everyone checks all slots.
    const N: usize = 4;
    const ROUNDS: u64 = 50;
    let slots: Vec<AtomicU64> = (0..N).map(|_| AtomicU64::new(0)).collect();
    let slots = &slots;
    spawn_spmd::<_, CommError, _>(N, |ctx| {
        for round in 1..=ROUNDS {
            slots[ctx.id()].store(round * 100 + ctx.id() as u64, Ordering::Relaxed);
            ctx.barrier()?;
            for (w, slot) in slots.iter().enumerate() {
                assert_eq!(slot.load(Ordering::Relaxed), round * 100 + w as u64);
            }
            ctx.barrier()?;
        }
        Ok(())
    })
    .unwrap();
}

#[test]
fn barrier_counters_tally_every_crossing() {
    let report = spawn_spmd::<_, CommError, _>(3, |ctx| {
        for _ in 0..7 {
            ctx.barrier()?;
        }
        Ok(())
    })
    .unwrap();
    assert_eq!(report.barriers, vec![7, 7, 7]);
}

#[test]
fn ring_exchange_delivers_and_counts() {
    const N: usize = 5;
    let report = spawn_spmd::<_, CommError, _>(N, |ctx| {
        let me = ctx.id();
        let right = (me + 1) % N;
        let left = (me + N - 1) % N;
        ctx.send_async(right, 7, &[me as f64, 2.0 * me as f64])?;
        let ticket = ctx.recv_async(left, 7, 2)?;
        let msgs = ctx.wait_all(&[ticket])?;
        Ok(msgs[0].clone())
    })
    .unwrap();
    for (me, got) in report.results.iter().enumerate() {
        let left = (me + N - 1) % N;
        assert_eq!(got, &vec![left as f64, 2.0 * left as f64]);
    }
    assert_eq!(report.sends, vec![1; N]);
    assert_eq!(report.recvs, vec![1; N]);
}

#[test]
fn posted_receives_are_redeemed_in_ticket_order() {
    let report = spawn_spmd::<_, CommError, _>(2, |ctx| {
        if ctx.id() == 0 {
            for k in 0..20 {
                ctx.send_async(1, 3, &[k as f64])?;
            }
            Ok(Vec::new())
        } else {
            let tickets: Vec<_> = (0..20)
                .map(|_| ctx.recv_async(0, 3, 1))
                .collect::<Result<_, _>>()?;
            let msgs = ctx.wait_all(&tickets)?;
            Ok(msgs.into_iter().map(|m| m[0]).collect::<Vec<f64>>())
        }
    })
    .unwrap();
    let expect: Vec<f64> = (0..20).map(|k| k as f64).collect();
    assert_eq!(report.results[1], expect);
}

#[test]
fn one_sided_reads_need_no_owner_participation() {
    // Worker 1 owns rows 2..4, writes them, then goes to sleep without any
    // further synchronization calls. Worker 0 reads the rows through the
    // array alone, after one barrier separating write from read.
    let array = SharedArray2D::with_even_row_blocks(4, 3, 2, [0.0; 4]).unwrap();
    let array = &array;
    spawn_spmd::<_, CommError, _>(2, |ctx| {
        if ctx.id() == 1 {
            {
                let mut mine = array.local_view(1, 1)?;
                for (k, cell) in mine.iter_mut().enumerate() {
                    *cell = [k as f64, 0.0, 0.0, 1.0];
                }
            }
            ctx.barrier()?;
            // Passive from here on: no barrier, no sends.
            std::thread::sleep(Duration::from_millis(40));
            Ok(())
        } else {
            ctx.barrier()?;
            let row2 = array.get_block(6..9)?; // first row of worker 1
            assert_eq!(row2[0], [0.0, 0.0, 0.0, 1.0]);
            assert_eq!(row2[2], [2.0, 0.0, 0.0, 1.0]);
            let col0 = array.get_strided(6, 3, 2)?; // column 0 of its rows
            assert_eq!(col0[1], [3.0, 0.0, 0.0, 1.0]);
            Ok(())
        }
    })
    .unwrap();
}

#[test]
fn patch_major_layout_keeps_patches_contiguous() {
    // Four 2x2 patches of a 4x4 grid stored patch-major: each worker's
    // region is one patch, so a patch row is a contiguous block and a patch
    // column is a stride-2 gather, regardless of which worker asks.
    let dist = Distribution::contiguous(&[4, 4, 4, 4]).unwrap();
    let array = SharedArray2D::new(4, 4, dist, [0.0; 4]).unwrap();
    let array = &array;
    spawn_spmd::<_, CommError, _>(4, |ctx| {
        let me = ctx.id();
        {
            let mut mine = array.local_view(me, me)?;
            for (k, cell) in mine.iter_mut().enumerate() {
                *cell = [(me * 4 + k) as f64, 0.0, 0.0, 0.0];
            }
        }
        ctx.barrier()?;
        // Bottom row of the patch one rank to the right (cyclically).
        let neighbor = (me + 1) % 4;
        let base = neighbor * 4;
        let row = array.get_block(base..base + 2)?;
        assert_eq!(row[0][0], (neighbor * 4) as f64);
        let col = array.get_strided(base + 1, 2, 2)?;
        assert_eq!(col[1][0], (neighbor * 4 + 3) as f64);
        ctx.barrier()?;
        Ok(())
    })
    .unwrap();
}

#[test]
fn kernel_errors_release_blocked_peers() {
    let err = spawn_spmd::<(), CommError, _>(4, |ctx| {
        if ctx.id() == 2 {
            // Fail before ever reaching the barrier.
            Err(CommError::IndexOutOfRange { index: 99, len: 10 })
        } else {
            // These would deadlock forever if poisoning did not wake them.
            loop {
                ctx.barrier()?;
            }
        }
    })
    .unwrap_err();
    match err {
        SpmdError::Kernel { worker, source } => {
            assert_eq!(worker, 2);
            assert_eq!(source, CommError::IndexOutOfRange { index: 99, len: 10 });
        }
        other => panic!("unexpected outcome: {other:?}"),
    }
}

#[test]
fn panics_are_contained_and_attributed() {
    let err = spawn_spmd::<(), CommError, _>(3, |ctx| {
        if ctx.id() == 1 {
            panic!("boom");
        }
        let mut buf = [0.0];
        // Blocks until the poison from the panic wakes it.
        ctx.recv_into(1, 0, &mut buf)?;
        Ok(())
    })
    .unwrap_err();
    assert!(matches!(err, SpmdError::WorkerPanic { worker: 1 }));
}

#[test]
fn unreceived_messages_are_flagged_at_shutdown() {
    let err = spawn_spmd::<(), CommError, _>(2, |ctx| {
        if ctx.id() == 0 {
            ctx.send_async(1, 42, &[1.0, 2.0])?;
        }
        Ok(())
    })
    .unwrap_err();
    match err {
        SpmdError::OrphanMessages { count, src, dst, tag } => {
            assert_eq!((count, src, dst, tag), (1, 0, 1, 42));
        }
        other => panic!("unexpected outcome: {other:?}"),
    }
}

#[test]
fn oversubscribed_groups_make_progress() {
    // Many more workers than cores: parked barrier waiters must not spin
    // each other out of CPU time.
    let report = spawn_spmd::<_, CommError, _>(16, |ctx| {
        let mut acc = 0u64;
        for _ in 0..25 {
            ctx.barrier()?;
            acc += 1;
        }
        Ok(acc)
    })
    .unwrap();
    assert!(report.results.iter().all(|&a| a == 25));
}
