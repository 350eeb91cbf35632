// Wire types mirroring the service response schemas.

export type Category = 'actuation' | 'indication' | 'constraint';

export const CATEGORY_ORDER: Category[] = ['actuation', 'indication', 'constraint'];

export interface WireDetection {
    image_id: number;
    category_id: number;
    class_name: string;
    bbox: [number, number, number, number];
    score: number;
}

export interface WireDesign {
    design_id: string;
    title: string;
    description?: string;
    tags?: string[];
    target_objects: string[];
    labels: string[];
    source_url: string;
}

export interface WireRecommendation {
    detection_index: number;
    groups: Record<Category, WireDesign[]>;
}

export interface ScanResult {
    scan_id: string;
    image: { file_name: string; width: number | null; height: number | null };
    detections: WireDetection[];
    recommendations: WireRecommendation[];
    skipped_unidentifiable: number;
    created_at: string;
}

export interface TaxonomyRow {
    id: number;
    name: string;
    parent_category: string | null;
    evaluable: boolean;
}

export interface ObjectClass {
    name: string;
    aliases?: string[];
}

export interface DictionaryPayload {
    version: string;
    object_classes: ObjectClass[];
    designs: WireDesign[];
}

export interface ApiError {
    kind: string;
    message: string;
}
