// DOM wiring. All rendering decisions come from the pure view-model layer;
// this file only moves data between the service, the state, and the page.

import { ApiClient, ApiRequestError } from './api.js';
import type { Category, DictionaryPayload, ScanResult, WireDesign } from './types.js';
import { CATEGORY_ORDER } from './types.js';
import {
    buildScanView,
    designLink,
    filterDesigns,
    type ScanView,
} from './viewmodel.js';

const api = new ApiClient('');

interface AppState {
    scan: ScanResult | null;
    imageUrl: string | null;
    selectedDetection: number | null;
    activeCategory: Category;
    error: string | null;
    busy: boolean;
    dictionary: DictionaryPayload | null;
    explorerObject: string | null;
    explorerCategory: Category | null;
}

const state: AppState = {
    scan: null,
    imageUrl: null,
    selectedDetection: null,
    activeCategory: 'actuation',
    error: null,
    busy: false,
    dictionary: null,
    explorerObject: null,
    explorerCategory: null,
};

function el<T extends HTMLElement>(id: string): T {
    const node = document.getElementById(id);
    if (!node) throw new Error(`missing element #${id}`);
    return node as T;
}

function setError(message: string | null) {
    state.error = message;
    const banner = el<HTMLDivElement>('error-banner');
    banner.textContent = message ?? '';
    banner.hidden = message === null;
}

async function onFileChosen(file: File) {
    if (state.busy) return;
    state.busy = true;
    setError(null);
    state.scan = null;
    state.selectedDetection = null;
    renderScan();
    try {
        const scan = await api.scan(file, file.name);
        if (state.imageUrl) URL.revokeObjectURL(state.imageUrl);
        state.imageUrl = URL.createObjectURL(file);
        state.scan = scan;
    } catch (err) {
        if (err instanceof ApiRequestError) {
            setError(`Scan failed (${err.kind}): ${err.message}`);
        } else {
            setError('Scan failed: the service is unreachable.');
        }
    } finally {
        state.busy = false;
        renderScan();
    }
}

function renderScan() {
    const photo = el<HTMLImageElement>('scan-photo');
    const overlay = el<HTMLDivElement>('overlay');
    const empty = el<HTMLParagraphElement>('scan-empty');
    const skipNote = el<HTMLParagraphElement>('skip-note');
    const panel = el<HTMLDivElement>('suggestions');

    overlay.replaceChildren();
    panel.hidden = state.selectedDetection === null;
    if (!state.scan || !state.imageUrl) {
        photo.hidden = true;
        skipNote.hidden = true;
        empty.hidden = state.busy;
        empty.textContent = state.busy ? '' : 'Upload a photo to assess it.';
        return;
    }

    photo.hidden = false;
    if (photo.src !== state.imageUrl) {
        photo.onload = () => renderScan();
        photo.src = state.imageUrl;
        return;
    }
    if (!photo.naturalWidth) return;

    const view = buildScanView(
        state.scan,
        { width: photo.naturalWidth, height: photo.naturalHeight },
        { width: photo.clientWidth, height: photo.clientHeight },
        state.selectedDetection,
        state.activeCategory,
    );

    empty.hidden = view.boxes.length > 0;
    empty.textContent = 'No inaccessible objects detected in this photo.';
    skipNote.hidden = view.skippedUnidentifiable === 0;
    skipNote.textContent =
        `${view.skippedUnidentifiable} unidentifiable detection(s) were skipped.`;

    for (const box of view.boxes) {
        const div = document.createElement('div');
        div.className = 'box' + (box.detectionIndex === view.selectedDetection ? ' selected' : '');
        div.style.left = `${box.left}px`;
        div.style.top = `${box.top}px`;
        div.style.width = `${box.width}px`;
        div.style.height = `${box.height}px`;
        const tag = document.createElement('span');
        tag.className = 'box-label';
        tag.textContent = `${box.label} ${(box.score * 100).toFixed(0)}%`;
        div.appendChild(tag);
        if (box.selectable) {
            div.classList.add('selectable');
            div.addEventListener('click', () => {
                state.selectedDetection = box.detectionIndex;
                state.activeCategory = 'actuation';
                renderScan();
            });
        }
        overlay.appendChild(div);
    }
    renderSuggestions(view);
}

function renderSuggestions(view: ScanView) {
    const panel = el<HTMLDivElement>('suggestions');
    const tabsBar = el<HTMLDivElement>('tabs');
    const list = el<HTMLDivElement>('design-list');
    panel.hidden = view.selectedDetection === null;
    if (view.selectedDetection === null) return;

    const detection = state.scan!.detections[view.selectedDetection];
    el<HTMLHeadingElement>('suggestion-title').textContent =
        `Suggestions for ${detection.class_name}`;

    tabsBar.replaceChildren();
    for (const tab of view.tabs) {
        const button = document.createElement('button');
        button.className = 'tab' + (tab.category === view.activeCategory ? ' active' : '');
        button.textContent = `${tab.category} (${tab.designs.length})`;
        button.addEventListener('click', () => {
            state.activeCategory = tab.category;
            renderScan();
        });
        tabsBar.appendChild(button);
    }

    const active = view.tabs.find((t) => t.category === view.activeCategory);
    list.replaceChildren();
    if (!active || active.designs.length === 0) {
        const p = document.createElement('p');
        p.className = 'empty';
        p.textContent = 'No designs in this category for the detected object.';
        list.appendChild(p);
        return;
    }
    for (const design of active.designs) {
        list.appendChild(designCard(design));
    }
}

function designCard(design: WireDesign): HTMLElement {
    const card = document.createElement('article');
    card.className = 'design';
    const link = document.createElement('a');
    link.href = designLink(design);
    link.target = '_blank';
    link.rel = 'noopener';
    link.textContent = design.title;
    const meta = document.createElement('p');
    meta.textContent = `${design.labels.join(', ')} · for ${design.target_objects.join(', ')}`;
    card.append(link, meta);
    return card;
}

async function initExplorer() {
    if (!state.dictionary) {
        state.dictionary = await api.dictionary();
        const select = el<HTMLSelectElement>('explorer-object');
        for (const obj of state.dictionary.object_classes) {
            const option = document.createElement('option');
            option.value = obj.name;
            option.textContent = obj.name;
            select.appendChild(option);
        }
    }
    renderExplorer();
}

function renderExplorer() {
    if (!state.dictionary) return;
    const list = el<HTMLDivElement>('explorer-list');
    const designs = filterDesigns(
        state.dictionary.designs,
        state.explorerObject,
        state.explorerCategory,
    );
    el<HTMLParagraphElement>('explorer-count').textContent =
        `${designs.length} design(s)`;
    list.replaceChildren(...designs.map(designCard));
}

function switchView(name: 'scan' | 'explorer') {
    el<HTMLElement>('scan-view').hidden = name !== 'scan';
    el<HTMLElement>('explorer-view').hidden = name !== 'explorer';
    if (name === 'explorer') void initExplorer();
}

export function start() {
    el<HTMLInputElement>('file-input').addEventListener('change', (event) => {
        const input = event.target as HTMLInputElement;
        if (input.files && input.files[0]) void onFileChosen(input.files[0]);
    });
    el<HTMLButtonElement>('nav-scan').addEventListener('click', () => switchView('scan'));
    el<HTMLButtonElement>('nav-explorer').addEventListener('click', () => switchView('explorer'));
    el<HTMLSelectElement>('explorer-object').addEventListener('change', (event) => {
        state.explorerObject = (event.target as HTMLSelectElement).value || null;
        renderExplorer();
    });
    el<HTMLSelectElement>('explorer-category').addEventListener('change', (event) => {
        const value = (event.target as HTMLSelectElement).value;
        state.explorerCategory = (CATEGORY_ORDER as string[]).includes(value)
            ? (value as Category)
            : null;
        renderExplorer();
    });
    window.addEventListener('resize', () => renderScan());
    renderScan();
}

if (typeof document !== 'undefined' && document.getElementById('scan-view')) {
    start();
}
