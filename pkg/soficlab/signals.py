import django.dispatch

witness_found = django.dispatch.Signal()  # instance, witness, method
search_finished = django.dispatch.Signal()  # instance, best_defect, method, restarts
certificate_issued = django.dispatch.Signal()  # certificate
validation_failed = django.dispatch.Signal()  # group, report
