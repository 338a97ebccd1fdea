"""Input coercion used by the estimators and the CLI."""
from __future__ import annotations

from pathlib import Path

from .exceptions import MalformedInstance
from .io import instance_from_dict, read_instance
from .model import Assignment, Instance


def check_instance(X, exact: bool = True) -> Instance:
    """Coerce ``X`` to an :class:`Instance`.

    Accepts an instance, an instance document as a dict, or a path to one.
    """
    if isinstance(X, Instance):
        return X
    if isinstance(X, dict):
        return instance_from_dict(X, exact=exact)
    if isinstance(X, (str, Path)):
        return read_instance(X, exact=exact)
    raise TypeError(f"expected an Instance, a dict or a path, got {type(X).__name__}")


def check_assignment(instance: Instance, a) -> Assignment:
    """Coerce ``a`` (an Assignment or a label sequence) and check its shape."""
    if isinstance(a, Assignment):
        pass
    elif hasattr(a, "__len__") and len(a) and not hasattr(a[0], "__len__"):
        if instance.centers is None:
            raise MalformedInstance("labels alone need fixed centers; pass an Assignment")
        a = Assignment.from_labels([int(i) for i in a], instance.centers, exact=instance.exact)
    else:
        raise TypeError("expected an Assignment or a sequence of district labels")
    if a.p != instance.p:
        raise MalformedInstance(f"assignment has {a.p} districts, instance has p={instance.p}")
    if a.edge_count != instance.edge_count:
        raise MalformedInstance(f"assignment covers {a.edge_count} edges, instance has {instance.edge_count}")
    return a
