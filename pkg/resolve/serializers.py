import json

from rest_framework import serializers

from .extchart import Edge, ExtChart, Window


class WindowSerializer(serializers.Serializer):
    """Serializer for chart windows"""
    s_max = serializers.IntegerField(min_value=0)
    t_max = serializers.IntegerField()
    stem_max = serializers.IntegerField(required=False, allow_null=True, default=None)


class EdgeSerializer(serializers.Serializer):
    """Serializer for h_i product edges"""
    kind = serializers.ChoiceField(choices=['h0', 'h1', 'h2'])
    # 'from' is a keyword, so the field is renamed on the way in and out
    origin = serializers.ListField(child=serializers.IntegerField(), min_length=3, max_length=3)
    to = serializers.ListField(child=serializers.IntegerField(), min_length=3, max_length=3)

    def to_internal_value(self, data):
        if isinstance(data, dict) and 'from' in data:
            data = {**data, 'origin': data['from']}
        return super().to_internal_value(data)

    def to_representation(self, instance):
        return {'kind': instance.kind, 'from': list(instance.source), 'to': list(instance.target)}

    def validate(self, data):
        s, t, _ = data['origin']
        s2, t2, _ = data['to']
        step = {'h0': 1, 'h1': 2, 'h2': 4}[data['kind']]
        if s2 != s + 1 or t2 != t + step:
            raise serializers.ValidationError(f"{data['kind']} edge must go from (s, t) to (s + 1, t + {step})")
        return data


class ExtChartSerializer(serializers.Serializer):
    """Serializer for Ext charts: {algebra, module, window, dims, edges, annotations}"""
    algebra = serializers.CharField()
    module = serializers.CharField(allow_blank=True)
    window = WindowSerializer()
    dims = serializers.ListField(
        child=serializers.ListField(child=serializers.IntegerField(), min_length=3, max_length=3)
    )
    edges = EdgeSerializer(many=True, required=False)
    annotations = serializers.ListField(child=serializers.DictField(), required=False)

    def to_representation(self, instance):
        return {
            'algebra': instance.algebra,
            'module': instance.module,
            'window': instance.window.to_dict(),
            'dims': [[s, t, n] for (s, t), n in sorted(instance.dims.items())],
            'edges': [EdgeSerializer(e).data for e in instance.edges],
            'annotations': [dict(a) for a in instance.annotations],
        }

    def validate_dims(self, value):
        seen = set()
        for s, t, n in value:
            if n < 0:
                raise serializers.ValidationError(f'Negative dimension at ({s}, {t})')
            if (s, t) in seen:
                raise serializers.ValidationError(f'Cell ({s}, {t}) listed twice')
            seen.add((s, t))
        return value

    def validate(self, data):
        window = Window(**data['window'])
        for s, t, n in data['dims']:
            if n and not window.contains(s, t):
                raise serializers.ValidationError(f'Cell ({s}, {t}) lies outside the window')
        return data

    def create(self, validated_data):
        return ExtChart(
            validated_data['algebra'],
            validated_data['module'],
            Window(**validated_data['window']),
            {(s, t): n for s, t, n in validated_data['dims']},
            [Edge(e['kind'], tuple(e['origin']), tuple(e['to'])) for e in validated_data.get('edges', [])],
            [dict(a) for a in validated_data.get('annotations', [])],
        )


def chart_to_json(chart: ExtChart) -> str:
    """Deterministic JSON text of a chart"""
    return json.dumps(ExtChartSerializer(chart).data, sort_keys=True, indent=2) + '\n'
