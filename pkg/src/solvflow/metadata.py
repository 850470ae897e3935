from importlib.metadata import version

dist_name = __name__.split(".", maxsplit=1)[0]
__version__ = version(dist_name)
