from django.core.management.base import BaseCommand

from soficlab.cache import file_cache


class Command(BaseCommand):
    help = 'Removes expired entries of the result cache'
    requires_system_checks = []

    def add_arguments(self, parser):
        parser.add_argument('--all', action='store_true', dest='everything',
                            help='Remove every entry, not only the expired ones')

    def handle(self, everything=False, **options):
        removed = file_cache.clean(everything=everything)
        self.stdout.write('Removed %d %sfile(s) from %s'
                          % (removed, '' if everything else 'expired ', file_cache.dir))
