import { afterEach, beforeEach, describe, expect, it, vi } from "vitest";

import { Recomputer } from "../src/api.js";

describe("Recomputer", () => {
  beforeEach(() => vi.useFakeTimers());
  afterEach(() => vi.useRealTimers());

  it("debounces bursts into one request", async () => {
    const recomputer = new Recomputer(150);
    const run = vi.fn(async () => "x");
    const apply = vi.fn();
    for (let i = 0; i < 10; i++) {
      recomputer.schedule(run, apply);
      vi.advanceTimersByTime(50);
    }
    vi.advanceTimersByTime(200);
    await vi.runAllTimersAsync();
    expect(run).toHaveBeenCalledTimes(1);
    expect(apply).toHaveBeenCalledWith("x");
  });

  it("aborts the in-flight request when superseded", async () => {
    const recomputer = new Recomputer(10);
    const seenSignals: AbortSignal[] = [];
    let resolveFirst: (v: string) => void = () => {};
    const run = vi.fn((signal: AbortSignal) => {
      seenSignals.push(signal);
      return seenSignals.length === 1
        ? new Promise<string>((res) => (resolveFirst = res))
        : Promise.resolve("second");
    });
    const apply = vi.fn();

    recomputer.schedule(run, apply);
    await vi.advanceTimersByTimeAsync(20); // first request now in flight
    recomputer.schedule(run, apply);
    await vi.advanceTimersByTimeAsync(20);
    expect(seenSignals[0].aborted).toBe(true);
    expect(seenSignals[1].aborted).toBe(false);

    resolveFirst("first"); // late arrival must not clobber the newer result
    await vi.runAllTimersAsync();
    expect(apply).toHaveBeenCalledTimes(1);
    expect(apply).toHaveBeenCalledWith("second");
  });

  it("swallows abort errors and reports real ones", async () => {
    const recomputer = new Recomputer(5);
    const errors = vi.spyOn(console, "error").mockImplementation(() => {});
    recomputer.schedule(async () => {
      throw new DOMException("gone", "AbortError");
    }, vi.fn());
    await vi.runAllTimersAsync();
    expect(errors).not.toHaveBeenCalled();
    recomputer.schedule(async () => {
      throw new Error("boom");
    }, vi.fn());
    await vi.runAllTimersAsync();
    expect(errors).toHaveBeenCalledOnce();
    errors.mockRestore();
  });
});
