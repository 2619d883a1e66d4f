import numpy as np
from rest_framework import serializers

from common import constants
from homogeneous.connection import ConnectionData, Grading
from lie.algebra import LieAlgebraData
from lie.subspace import span
from spheres.params import SphereParams


def _vector_list(**kwargs):
    return serializers.ListField(child=serializers.ListField(child=serializers.FloatField()), **kwargs)


def _check_lengths(vectors, length, field, errors):
    for position, vector in enumerate(vectors or []):
        if len(vector) != length:
            errors.setdefault(field, []).append(
                'entry {0}: expected {1} components, got {2}'.format(position, length, len(vector)))


class LieAlgebraSerializer(serializers.Serializer):
    dim = serializers.IntegerField(min_value=1)
    structure = serializers.ListField(
        child=serializers.ListField(child=serializers.FloatField(), min_length=4, max_length=4),
        allow_empty=True,
    )
    labels = serializers.ListField(child=serializers.CharField(), required=False)

    def validate(self, data):
        dim = data['dim']
        problems = []
        for position, (i, j, k, _) in enumerate(data['structure']):
            if not all(float(index).is_integer() for index in (i, j, k)):
                problems.append('entry {0}: indices must be integers'.format(position))
            elif not 0 <= i < j < dim:
                problems.append('entry {0}: need 0 <= i < j < {1}, got i={2:g} j={3:g}'.format(position, dim, i, j))
            elif not 0 <= k < dim:
                problems.append('entry {0}: index k={1:g} out of range'.format(position, k))
        if problems:
            raise serializers.ValidationError({'structure': problems})
        labels = data.get('labels')
        if labels is not None and len(labels) != dim:
            raise serializers.ValidationError({'labels': ['expected {0} labels, got {1}'.format(dim, len(labels))]})
        return data

    def create(self, validated_data):
        structure = [(int(i), int(j), int(k), c) for i, j, k, c in validated_data['structure']]
        return LieAlgebraData.from_structure(validated_data['dim'], structure, validated_data.get('labels'))


class GradingSerializer(serializers.Serializer):
    minus = serializers.ListField(child=serializers.IntegerField(min_value=0))
    zero = serializers.ListField(child=serializers.IntegerField(min_value=0))
    plus = serializers.ListField(child=serializers.IntegerField(min_value=0))

    def create(self, validated_data):
        return Grading(**validated_data)


class SphereParamsSerializer(serializers.Serializer):
    p = serializers.IntegerField(min_value=1)
    q = serializers.IntegerField(min_value=1)
    s = serializers.FloatField()
    s_prime = serializers.FloatField()

    def validate(self, data):
        if data['p'] + data['q'] < 3:
            raise serializers.ValidationError('p + q must be at least 3')
        if data['s'] <= 0:
            raise serializers.ValidationError({'s': ['must be positive']})
        if data['s_prime'] == 0:
            raise serializers.ValidationError({'s_prime': ['must be nonzero']})
        return data

    def create(self, validated_data):
        return SphereParams(**validated_data)


class ConnectionSerializer(serializers.Serializer):
    """
    Geometry JSON of an invariant connection.

    `alpha` and `psi_prime` list the images in g of the basis of h and of
    the k basis, one vector per entry.
    """
    kind = serializers.ChoiceField(choices=constants.KINDS, default=constants.KIND_CARTAN)
    h = LieAlgebraSerializer()
    g = LieAlgebraSerializer()
    k_basis = _vector_list(allow_empty=True)
    p_basis = _vector_list(allow_empty=True)
    alpha = _vector_list()
    psi_prime = _vector_list(required=False, allow_empty=True)
    grading = GradingSerializer(required=False)
    simply_connected = serializers.BooleanField(required=False, allow_null=True, default=None)
    sphere_params = SphereParamsSerializer(required=False)

    def validate(self, data):
        h_dim, g_dim = data['h']['dim'], data['g']['dim']
        errors = {}
        _check_lengths(data['k_basis'], h_dim, 'k_basis', errors)
        _check_lengths(data['p_basis'], g_dim, 'p_basis', errors)
        _check_lengths(data['alpha'], g_dim, 'alpha', errors)
        _check_lengths(data.get('psi_prime'), g_dim, 'psi_prime', errors)
        if len(data['alpha']) != h_dim:
            errors.setdefault('alpha', []).append('expected {0} images, got {1}'.format(h_dim, len(data['alpha'])))
        grading = data.get('grading')
        if grading is not None:
            indices = sorted(grading['minus'] + grading['zero'] + grading['plus'])
            if indices != list(range(g_dim)):
                errors['grading'] = ['blocks must partition the {0} basis indices of g'.format(g_dim)]
        if errors:
            raise serializers.ValidationError(errors)
        return data

    def create(self, validated_data):
        h = LieAlgebraSerializer().create(validated_data['h'])
        g = LieAlgebraSerializer().create(validated_data['g'])
        grading = validated_data.get('grading')
        params = validated_data.get('sphere_params')
        psi_prime = validated_data.get('psi_prime')
        return ConnectionData(
            h=h,
            g=g,
            k_basis=span(validated_data['k_basis'], ambient_dim=h.dim),
            p_basis=span(validated_data['p_basis'], ambient_dim=g.dim),
            alpha=np.array(validated_data['alpha'], dtype=float).reshape(h.dim, g.dim).T,
            kind=validated_data['kind'],
            psi_prime=None if psi_prime is None else np.array(psi_prime, dtype=float),
            grading=None if grading is None else GradingSerializer().create(grading),
            simply_connected=validated_data.get('simply_connected'),
            sphere_params=None if params is None else SphereParams(**params).to_dict(),
        )


class ConnectionDataSerializer(serializers.Serializer):
    """Emits a ConnectionData in the layout read by ConnectionSerializer."""
    kind = serializers.CharField()
    h = serializers.SerializerMethodField()
    g = serializers.SerializerMethodField()
    k_basis = serializers.SerializerMethodField()
    p_basis = serializers.SerializerMethodField()
    alpha = serializers.SerializerMethodField()
    psi_prime = serializers.SerializerMethodField()
    grading = serializers.SerializerMethodField()
    simply_connected = serializers.BooleanField(allow_null=True)
    sphere_params = serializers.DictField(allow_null=True)

    def get_h(self, obj):
        return obj.h.to_dict()

    def get_g(self, obj):
        return obj.g.to_dict()

    def get_k_basis(self, obj):
        return obj.k_basis.basis.tolist()

    def get_p_basis(self, obj):
        return obj.p_basis.basis.tolist()

    def get_alpha(self, obj):
        return obj.alpha.T.tolist()

    def get_psi_prime(self, obj):
        if obj.psi_prime is None:
            return None
        return obj.psi_prime.tolist()

    def get_grading(self, obj):
        if obj.grading is None:
            return None
        return {'minus': list(obj.grading.minus), 'zero': list(obj.grading.zero), 'plus': list(obj.grading.plus)}

    def to_representation(self, instance):
        data = super().to_representation(instance)
        return {key: value for key, value in data.items() if value is not None}
