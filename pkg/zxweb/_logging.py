import logging

__all__ = ['get_logger']

# by default the library stays silent unless the application configures logging
# https://docs.python.org/3/howto/logging.html#configuring-logging-for-a-library
logging.getLogger('zxweb').addHandler(logging.NullHandler())


def get_logger(name):
    """return a logger instance"""
    return logging.getLogger(name)
