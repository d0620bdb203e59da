/* tslint:disable */
/* eslint-disable */

export class Demo {
    free(): void;
    [Symbol.dispose](): void;
    /**
     * SVG of what `algo` has explored after `iterations` iterations.
     */
    explore(algo: string, iterations: number): string;
    static families(): string[];
    /**
     * `locations = 0` keeps the family default.
     */
    constructor(family: string, seed: bigint, locations: number);
    /**
     * Runs `algo` (e.g. `lacas*`, `astar-k,k=5`) for at most `timeout_ms`; returns JSON.
     */
    solve(algo: string, timeout_ms: number): string;
    svg(): string;
    readonly locations: number;
    readonly obstacles: number;
}

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly __wbg_demo_free: (a: number, b: number) => void;
    readonly demo_explore: (a: number, b: number, c: number, d: number) => [number, number, number, number];
    readonly demo_families: () => [number, number];
    readonly demo_locations: (a: number) => number;
    readonly demo_new: (a: number, b: number, c: bigint, d: number) => [number, number, number];
    readonly demo_obstacles: (a: number) => number;
    readonly demo_solve: (a: number, b: number, c: number, d: number) => [number, number, number, number];
    readonly demo_svg: (a: number) => [number, number];
    readonly __externref_table_alloc: () => number;
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __wbindgen_malloc: (a: number, b: number) => number;
    readonly __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
    readonly __externref_table_dealloc: (a: number) => void;
    readonly __wbindgen_free: (a: number, b: number, c: number) => void;
    readonly __externref_drop_slice: (a: number, b: number) => void;
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
