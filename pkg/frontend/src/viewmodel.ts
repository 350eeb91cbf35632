// Pure view-model layer: everything the UI renders is computed here from
// service responses plus the user's selections, so the whole flow is
// testable without a DOM.

import type {
    Category,
    ScanResult,
    WireDesign,
    WireDetection,
} from './types.js';
import { CATEGORY_ORDER } from './types.js';

export interface OverlayBox {
    detectionIndex: number;
    left: number;
    top: number;
    width: number;
    height: number;
    label: string;
    score: number;
    selectable: boolean;
}

export interface SuggestionTab {
    category: Category;
    designs: WireDesign[];
}

export interface ScanView {
    scanId: string;
    fileName: string;
    boxes: OverlayBox[];
    skippedUnidentifiable: number;
    selectedDetection: number | null;
    tabs: SuggestionTab[];
    activeCategory: Category;
}

/** Scale a detection box from natural image pixels to rendered pixels. */
export function scaleBox(
    bbox: [number, number, number, number],
    natural: { width: number; height: number },
    rendered: { width: number; height: number },
): { left: number; top: number; width: number; height: number } {
    const sx = rendered.width / natural.width;
    const sy = rendered.height / natural.height;
    return {
        left: bbox[0] * sx,
        top: bbox[1] * sy,
        width: bbox[2] * sx,
        height: bbox[3] * sy,
    };
}

export function overlayBoxes(
    scan: ScanResult,
    natural: { width: number; height: number },
    rendered: { width: number; height: number },
): OverlayBox[] {
    const recommended = new Set(scan.recommendations.map((r) => r.detection_index));
    return scan.detections.map((det: WireDetection, index: number) => {
        const scaled = scaleBox(det.bbox, natural, rendered);
        return {
            detectionIndex: index,
            ...scaled,
            label: det.class_name,
            score: det.score,
            selectable: recommended.has(index),
        };
    });
}

/** The three category tabs for one detection; all present, possibly empty. */
export function suggestionTabs(scan: ScanResult, detectionIndex: number): SuggestionTab[] {
    const rec = scan.recommendations.find((r) => r.detection_index === detectionIndex);
    return CATEGORY_ORDER.map((category) => ({
        category,
        designs: rec ? rec.groups[category] : [],
    }));
}

export function buildScanView(
    scan: ScanResult,
    natural: { width: number; height: number },
    rendered: { width: number; height: number },
    selectedDetection: number | null = null,
    activeCategory: Category = 'actuation',
): ScanView {
    return {
        scanId: scan.scan_id,
        fileName: scan.image.file_name,
        boxes: overlayBoxes(scan, natural, rendered),
        skippedUnidentifiable: scan.skipped_unidentifiable,
        selectedDetection,
        tabs: selectedDetection === null ? [] : suggestionTabs(scan, selectedDetection),
        activeCategory,
    };
}

/** Dictionary explorer filtering: object and category are independent. */
export function filterDesigns(
    designs: WireDesign[],
    object: string | null,
    category: Category | null,
): WireDesign[] {
    return designs.filter((d) => {
        if (object && !d.target_objects.includes(object)) return false;
        if (category) {
            const highs = d.labels.map((label) => label.split('-')[0]);
            if (!highs.includes(category)) return false;
        }
        return true;
    });
}

/** External links come verbatim from the design record. */
export function designLink(design: WireDesign): string {
    return design.source_url;
}
