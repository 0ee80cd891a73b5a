/* tslint:disable */
/* eslint-disable */

export class Curves {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    readonly n: Float64Array;
    /**
     * Standard errors of `n`; empty for deterministic methods.
     */
    readonly n_err: Float64Array;
    readonly r: Float64Array;
    readonly r_err: Float64Array;
    readonly times: Float64Array;
}

/**
 * Monte Carlo average over `n_traj` field realisations.
 */
export function mc_run(nu: number, t_max: number, n_traj: number, seed: bigint): Curves;

/**
 * Radial PDE solution for `nu/Omega0 = nu`.
 */
export function pde_run(nu: number, t_max: number, points: number): Curves;

/**
 * Static-field limit `N_st(t)`, `R_st(t)` on `points` evenly spaced times.
 */
export function static_limit(t_max: number, points: number): Curves;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly __wbg_curves_free: (a: number, b: number) => void;
    readonly curves_n: (a: number) => [number, number];
    readonly curves_n_err: (a: number) => [number, number];
    readonly curves_r: (a: number) => [number, number];
    readonly curves_r_err: (a: number) => [number, number];
    readonly curves_times: (a: number) => [number, number];
    readonly mc_run: (a: number, b: number, c: number, d: bigint) => [number, number, number];
    readonly pde_run: (a: number, b: number, c: number) => [number, number, number];
    readonly static_limit: (a: number, b: number) => [number, number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __wbindgen_free: (a: number, b: number, c: number) => void;
    readonly __externref_table_dealloc: (a: number) => void;
    readonly __wbindgen_start: () => void;
}

export type SyncInitInput = BufferSource | WebAssembly.Module;

/**
 * Instantiates the given `module`, which can either be bytes or
 * a precompiled `WebAssembly.Module`.
 *
 * @param {{ module: SyncInitInput }} module - Passing `SyncInitInput` directly is deprecated.
 *
 * @returns {InitOutput}
 */
export function initSync(module: { module: SyncInitInput } | SyncInitInput): InitOutput;

/**
 * If `module_or_path` is {RequestInfo} or {URL}, makes a request and
 * for everything else, calls `WebAssembly.instantiate` directly.
 *
 * @param {{ module_or_path: InitInput | Promise<InitInput> }} module_or_path - Passing `InitInput` directly is deprecated.
 *
 * @returns {Promise<InitOutput>}
 */
export default function __wbg_init (module_or_path?: { module_or_path: InitInput | Promise<InitInput> } | InitInput | Promise<InitInput>): Promise<InitOutput>;
