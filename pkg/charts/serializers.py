from rest_framework import serializers

from resolve.serializers import ExtChartSerializer
from .assembly import Differential, Extension


class ChartSerializer(ExtChartSerializer):
    """Serializer for charts read from files; annotations must carry provenance"""

    def validate_annotations(self, value):
        for annotation in value:
            if 'kind' not in annotation or 'provenance' not in annotation:
                raise serializers.ValidationError('Annotations need a kind and a provenance')
        return value


class FactSerializer(serializers.Serializer):
    """Serializer for recorded differentials and extensions"""
    kind = serializers.ChoiceField(choices=['differential', 'extension'])
    r = serializers.IntegerField(required=False, min_value=1)
    operation = serializers.ChoiceField(choices=['2', 'eta', 'nu'], required=False)
    source = serializers.ListField(child=serializers.IntegerField(), min_length=2, max_length=2)
    target = serializers.ListField(child=serializers.IntegerField(), min_length=2, max_length=2)
    provenance = serializers.CharField()

    def validate(self, data):
        if data['kind'] == 'differential' and 'r' not in data:
            raise serializers.ValidationError('A differential needs r')
        if data['kind'] == 'extension' and 'operation' not in data:
            raise serializers.ValidationError('An extension needs an operation')
        return data

    def create(self, validated_data):
        source, target = tuple(validated_data['source']), tuple(validated_data['target'])
        if validated_data['kind'] == 'differential':
            return Differential(validated_data['r'], source, target, validated_data['provenance'])
        return Extension(validated_data['operation'], source, target, validated_data['provenance'])


class AssembledChartSerializer(serializers.Serializer):
    """Read-only view of an assembled chart: its pieces, facts and resulting dimensions"""

    def to_representation(self, instance):
        return {
            'pieces': [
                {'label': p.label, 'module': p.chart.module, 'stem': p.stem, 'filtration': p.filtration}
                for p in instance.pieces
            ],
            'facts': [f.annotation() for f in [*instance.differentials, *instance.extensions]],
            'chart': ExtChartSerializer(instance.chart()).data,
        }
