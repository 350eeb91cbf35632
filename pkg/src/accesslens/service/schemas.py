"""Published JSON schemas for wire responses.

Clients (and the test suite) validate every response body against these.
"""

BBOX_SCHEMA = {
    "type": "array",
    "items": {"type": "number"},
    "minItems": 4,
    "maxItems": 4,
}

DETECTION_SCHEMA = {
    "type": "object",
    "required": ["image_id", "category_id", "class_name", "bbox", "score"],
    "properties": {
        "image_id": {"type": "integer"},
        "category_id": {"type": "integer", "minimum": 1, "maximum": 22},
        "class_name": {"type": "string"},
        "bbox": BBOX_SCHEMA,
        "score": {"type": "number", "minimum": 0, "maximum": 1},
    },
    "additionalProperties": False,
}

DESIGN_SCHEMA = {
    "type": "object",
    "required": ["design_id", "title", "labels", "target_objects", "source_url"],
    "properties": {
        "design_id": {"type": "string"},
        "title": {"type": "string"},
        "description": {"type": "string"},
        "tags": {"type": "array", "items": {"type": "string"}},
        "target_objects": {"type": "array", "items": {"type": "string"}},
        "labels": {"type": "array", "items": {"type": "string"}},
        "source_url": {"type": "string"},
    },
    "additionalProperties": False,
}

RECOMMENDATION_SCHEMA = {
    "type": "object",
    "required": ["detection_index", "groups"],
    "properties": {
        "detection_index": {"type": "integer", "minimum": 0},
        "groups": {
            "type": "object",
            "required": ["actuation", "indication", "constraint"],
            "properties": {
                "actuation": {"type": "array", "items": DESIGN_SCHEMA},
                "indication": {"type": "array", "items": DESIGN_SCHEMA},
                "constraint": {"type": "array", "items": DESIGN_SCHEMA},
            },
            "additionalProperties": False,
        },
    },
    "additionalProperties": False,
}

SCAN_RESULT_SCHEMA = {
    "type": "object",
    "required": [
        "scan_id",
        "image",
        "detections",
        "recommendations",
        "skipped_unidentifiable",
        "created_at",
    ],
    "properties": {
        "scan_id": {"type": "string", "minLength": 1},
        "image": {
            "type": "object",
            "required": ["file_name", "width", "height"],
            "properties": {
                "file_name": {"type": "string"},
                "width": {"type": ["integer", "null"], "minimum": 1},
                "height": {"type": ["integer", "null"], "minimum": 1},
            },
            "additionalProperties": False,
        },
        "detections": {"type": "array", "items": DETECTION_SCHEMA},
        "recommendations": {"type": "array", "items": RECOMMENDATION_SCHEMA},
        "skipped_unidentifiable": {"type": "integer", "minimum": 0},
        "created_at": {"type": "string"},
    },
    "additionalProperties": False,
}

TAXONOMY_SCHEMA = {
    "type": "array",
    "items": {
        "type": "object",
        "required": ["id", "name", "parent_category", "evaluable"],
        "properties": {
            "id": {"type": "integer", "minimum": 1, "maximum": 22},
            "name": {"type": "string"},
            "parent_category": {"type": ["string", "null"]},
            "evaluable": {"type": "boolean"},
        },
        "additionalProperties": False,
    },
    "minItems": 22,
    "maxItems": 22,
}

DICTIONARY_SCHEMA = {
    "type": "object",
    "required": ["version", "object_classes", "designs"],
    "properties": {
        "version": {"type": "string"},
        "object_classes": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["name"],
                "properties": {
                    "name": {"type": "string"},
                    "aliases": {"type": "array", "items": {"type": "string"}},
                },
                "additionalProperties": False,
            },
        },
        "designs": {"type": "array", "items": DESIGN_SCHEMA},
    },
    "additionalProperties": False,
}

DESIGNS_RESPONSE_SCHEMA = {
    "type": "object",
    "required": ["object", "category", "designs"],
    "properties": {
        "object": {"type": "string"},
        "category": {"type": ["string", "null"]},
        "designs": {"type": "array", "items": DESIGN_SCHEMA},
    },
    "additionalProperties": False,
}

ERROR_SCHEMA = {
    "type": "object",
    "required": ["error"],
    "properties": {
        "error": {
            "type": "object",
            "required": ["kind", "message"],
            "properties": {
                "kind": {"type": "string"},
                "message": {"type": "string"},
            },
            "additionalProperties": False,
        }
    },
    "additionalProperties": False,
}

HEALTH_SCHEMA = {
    "type": "object",
    "required": ["status", "version"],
    "properties": {
        "status": {"type": "string"},
        "version": {"type": "string"},
    },
    "additionalProperties": False,
}
