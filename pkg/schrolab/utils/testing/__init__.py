from .base import BaseTestCase
