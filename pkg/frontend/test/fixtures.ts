import type { DictionaryPayload, ScanResult, WireDesign } from '../src/types';

export const switchExtension: WireDesign = {
    design_id: 'rc1001',
    title: 'Switch lever extension',
    target_objects: ['switch'],
    labels: ['actuation-operation'],
    source_url: 'https://example.com/designs/rc1001',
};

export const switchIdentifier: WireDesign = {
    design_id: 'rc1004',
    title: 'Switch plate identifier',
    target_objects: ['switch'],
    labels: ['indication-visual'],
    source_url: 'https://example.com/designs/rc1004',
};

export const switchCover: WireDesign = {
    design_id: 'rc1003',
    title: 'Switch protective cover',
    target_objects: ['switch'],
    labels: ['constraint'],
    source_url: 'https://example.com/designs/rc1003',
};

export const outletCover: WireDesign = {
    design_id: 'rc1201',
    title: 'Outlet cover',
    target_objects: ['outlet'],
    labels: ['constraint'],
    source_url: 'https://example.com/designs/rc1201',
};

// Mirrors a scan of the 640x480 bathroom fixture: one switch_toggle_multi
// box, one electric_outlet box, one unidentifiable detection skipped.
export const bathroomScan: ScanResult = {
    scan_id: 'scan-fixture-1',
    image: { file_name: 'bathroom.jpg', width: 640, height: 480 },
    detections: [
        {
            image_id: 1,
            category_id: 20,
            class_name: 'switch_toggle_multi',
            bbox: [100, 120, 40, 60],
            score: 1.0,
        },
        {
            image_id: 1,
            category_id: 3,
            class_name: 'electric_outlet',
            bbox: [300, 200, 30, 30],
            score: 0.9,
        },
    ],
    recommendations: [
        {
            detection_index: 0,
            groups: {
                actuation: [switchExtension],
                indication: [switchIdentifier],
                constraint: [switchCover],
            },
        },
        {
            detection_index: 1,
            groups: {
                actuation: [],
                indication: [],
                constraint: [outletCover],
            },
        },
    ],
    skipped_unidentifiable: 1,
    created_at: '2026-01-01T00:00:00+00:00',
};

export const dictionaryPayload: DictionaryPayload = {
    version: '0.1.0-reconstruction',
    object_classes: [
        { name: 'switch', aliases: ['light switch'] },
        { name: 'outlet', aliases: [] },
    ],
    designs: [switchExtension, switchIdentifier, switchCover, outletCover],
};
