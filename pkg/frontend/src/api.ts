// Thin client over the documented wire API. The fetch function is injected
// so tests can stub the service.

import type { DictionaryPayload, ScanResult, TaxonomyRow, WireDesign } from './types.js';

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ApiRequestError extends Error {
    constructor(
        public readonly kind: string,
        message: string,
        public readonly status: number,
    ) {
        super(message);
    }
}

async function raiseWireError(resp: Response): Promise<never> {
    let kind = 'unknown';
    let message = `request failed with status ${resp.status}`;
    try {
        const body = await resp.json();
        if (body && body.error) {
            kind = body.error.kind ?? kind;
            message = body.error.message ?? message;
        }
    } catch {
        // non-JSON error body; keep the generic message
    }
    throw new ApiRequestError(kind, message, resp.status);
}

export class ApiClient {
    constructor(
        private readonly baseUrl: string = '',
        private readonly fetchFn: FetchLike = (input, init) => fetch(input, init),
    ) {}

    private async getJson<T>(path: string): Promise<T> {
        const resp = await this.fetchFn(this.baseUrl + path);
        if (!resp.ok) await raiseWireError(resp);
        return resp.json() as Promise<T>;
    }

    async scan(file: File | Blob, fileName: string): Promise<ScanResult> {
        const form = new FormData();
        form.append('image', file, fileName);
        const resp = await this.fetchFn(this.baseUrl + '/api/scans', {
            method: 'POST',
            body: form,
        });
        if (!resp.ok) await raiseWireError(resp);
        return resp.json() as Promise<ScanResult>;
    }

    getScan(scanId: string): Promise<ScanResult> {
        return this.getJson(`/api/scans/${encodeURIComponent(scanId)}`);
    }

    taxonomy(): Promise<TaxonomyRow[]> {
        return this.getJson('/api/taxonomy');
    }

    dictionary(): Promise<DictionaryPayload> {
        return this.getJson('/api/dictionary');
    }

    designs(object: string, category?: string): Promise<{ designs: WireDesign[] }> {
        const params = new URLSearchParams({ object });
        if (category) params.set('category', category);
        return this.getJson(`/api/designs?${params}`);
    }
}
