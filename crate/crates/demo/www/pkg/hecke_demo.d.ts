/* tslint:disable */
/* eslint-disable */

/**
 * Catalog listing with element syntax and seed cosets.
 */
export function catalog(): string;

/**
 * Closure plus L¹ certificate when the closure is finite.
 */
export function certify(pair: string, p: number, elem: string, budget: number): string;

/**
 * Co-hereditary closure of `ΓelemΓ`. `p = 0` selects the default prime.
 */
export function closure(pair: string, p: number, elem: string, budget: number): string;

/**
 * Expansion of `ΓaΓ * ΓbΓ` in the double-coset basis.
 */
export function product(pair: string, p: number, a: string, b: string): string;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly catalog: () => [number, number];
    readonly certify: (a: number, b: number, c: number, d: number, e: number, f: number) => [number, number];
    readonly closure: (a: number, b: number, c: number, d: number, e: number, f: number) => [number, number];
    readonly product: (a: number, b: number, c: number, d: number, e: number, f: number, g: number) => [number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __wbindgen_free: (a: number, b: number, c: number) => void;
    readonly __wbindgen_malloc: (a: number, b: number) => number;
    readonly __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
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
