import logging
import os
import sys

from config import Config


class TreeSylow:
    """Settings and logger handed to every CLI command as ``ctx.obj``."""

    def __init__(self, import_name):
        self.import_name = import_name
        self.config = {}
        self.logger = logging.getLogger(import_name)

    def config_from_object(self, obj):
        for key in dir(obj):
            if key.isupper():
                self.config[key] = getattr(obj, key)


def _configure_logging(app):
    logger = app.logger
    level = str(app.config.get('LOG_LEVEL') or 'WARNING').upper()
    logger.setLevel(getattr(logging, level, logging.WARNING))
    # stdout is reserved for reports
    if not any(getattr(h, '_treesylow', False) for h in logger.handlers):
        handler = logging.StreamHandler(sys.stderr)
        handler.setFormatter(logging.Formatter('%(asctime)s %(levelname)s %(name)s: %(message)s'))
        handler._treesylow = True
        logger.addHandler(handler)


def create_app(config_class=Config):
    app = TreeSylow(__name__)
    app.config_from_object(config_class)
    _configure_logging(app)

    # Prepare export folder
    export_folder = app.config.get('EXPORT_FOLDER')
    if export_folder:
        try:
            os.makedirs(export_folder, exist_ok=True)
        except OSError as e:
            app.logger.error('could not create export folder %s: %s', export_folder, e)

    app.logger.info('CLOSURE_CAP picked: %s', app.config.get('CLOSURE_CAP'))
    app.logger.info('EXPORT  picked: %s', export_folder)
    app.logger.info('SEED    picked: %s', app.config.get('RANDOM_SEED'))
    return app
